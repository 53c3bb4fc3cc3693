#ifndef LMG_GROUND_STATE_HPP
#define LMG_GROUND_STATE_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "lmg/spin.hpp"
#include "lmg/tridiagonal.hpp"

namespace lmg
{

/// A real state of the S = N/2 multiplet supported on one parity sector.
/// amplitudes[i] multiplies |S, sector.m_values[i]>.
struct GroundState {
    ModelParams params;
    DickeSector sector;
    double energy;
    std::vector<double> amplitudes;

    [[nodiscard]] Parity parity() const noexcept { return sector.parity; }
};

/// The coordinate Dicke state |S,M> with its diagonal energy <S,M|H|S,M>.
inline GroundState coordinate_state(const ModelParams &params, HalfInteger m)
{
    const Parity parity = parity_of(params.spin(), m);
    auto sector = build_sector(params, parity);
    const auto matrix = build_sector_matrix(params, sector);
    std::vector<double> amplitudes(sector.dimension(), 0.0);
    const auto it = std::find(sector.m_values.begin(), sector.m_values.end(), m);
    const auto index = static_cast<std::size_t>(it - sector.m_values.begin());
    amplitudes[index] = 1.0;
    const double energy = matrix.diagonal()[index];
    return {params, std::move(sector), energy, std::move(amplitudes)};
}

/// Ground state of one parity sector.
inline GroundState sector_ground_state(const ModelParams &params, Parity parity)
{
    auto sector = build_sector(params, parity);
    auto pair = ground_eigenpair(build_sector_matrix(params, sector));
    return {params, std::move(sector), pair.energy, std::move(pair.vector)};
}

/// Ground state of the LMG model: the lower of the two parity-sector minima.
/// Energies within 1e-12 max(1,|E|) of each other count as degenerate and resolve to the even sector.
inline GroundState lmg_ground_state(const ModelParams &params)
{
    auto even = sector_ground_state(params, Parity::even);
    auto odd = sector_ground_state(params, Parity::odd);
    const double slack = 1e-12 * std::max(1.0, std::abs(even.energy));
    if (odd.energy < even.energy - slack) {
        return odd;
    }
    return even;
}

} // namespace lmg

#endif
