#ifndef LMG_SPIN_HPP
#define LMG_SPIN_HPP

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "lmg/errors.hpp"
#include "lmg/half_integer.hpp"
#include "lmg/tridiagonal.hpp"

namespace lmg
{

/// One instance of H = -(S_x^2 + gamma S_y^2)/N - h S_z with N spin-1/2 particles.
class ModelParams
{
public:
    ModelParams(int n_spins, double gamma, double h) : n_spins_(n_spins), gamma_(gamma), h_(h)
    {
        if (n_spins < 1) {
            throw DomainError("ModelParams: N must be >= 1");
        }
        if (!(gamma >= 0.0 && gamma <= 1.0)) {
            throw DomainError("ModelParams: gamma must lie in [0, 1]");
        }
        if (!(h >= 0.0) || !std::isfinite(h)) {
            throw DomainError("ModelParams: h must be finite and >= 0");
        }
    }

    [[nodiscard]] int n_spins() const noexcept { return n_spins_; }
    [[nodiscard]] double gamma() const noexcept { return gamma_; }
    [[nodiscard]] double h() const noexcept { return h_; }
    /// S = N/2
    [[nodiscard]] HalfInteger spin() const noexcept { return HalfInteger::from_twice(n_spins_); }

    bool operator==(const ModelParams &) const = default;

private:
    int n_spins_;
    double gamma_;
    double h_;
};

enum class Parity { even, odd };

inline std::string_view to_string(Parity p) noexcept { return p == Parity::even ? "even" : "odd"; }

/// Fixed-parity Dicke sublattice of the S = N/2 multiplet. m_values descend in steps of 2.
struct DickeSector {
    HalfInteger total_spin;
    Parity parity;
    std::vector<HalfInteger> m_values;

    [[nodiscard]] std::size_t dimension() const noexcept { return m_values.size(); }
};

namespace detail
{
inline void check_magnetic(HalfInteger s, HalfInteger m, const char *where)
{
    if (s.twice() < 0 || m < -s || m > s || (s - m).twice() % 2 != 0) {
        throw DomainError(std::string(where) + ": invalid (S, M) = (" + s.to_string() + ", " + m.to_string() + ")");
    }
}

/// S(S+1) - M(M+1)
inline double ladder_squared(HalfInteger s, HalfInteger m) noexcept
{
    // integer arithmetic on twice-values: 4[S(S+1) - M(M+1)] = 2S(2S+2) - 2M(2M+2)
    const long long ts = s.twice();
    const long long tm = m.twice();
    return static_cast<double>(ts * (ts + 2) - tm * (tm + 2)) / 4.0;
}
} // namespace detail

/// Amplitude of S_+|S,M> on |S,M+1>: sqrt(S(S+1) - M(M+1)).
inline double ladder_coefficient(HalfInteger s, HalfInteger m)
{
    detail::check_magnetic(s, m, "ladder_coefficient");
    return std::sqrt(detail::ladder_squared(s, m));
}

/// Eigenvalue of the spin-flip operator prod_i sigma_z^i on |S,M>, i.e. (-1)^(S-M).
inline Parity parity_of(HalfInteger s, HalfInteger m)
{
    detail::check_magnetic(s, m, "parity_of");
    return ((s - m).twice() / 2) % 2 == 0 ? Parity::even : Parity::odd;
}

inline DickeSector build_sector(const ModelParams &params, Parity parity)
{
    const HalfInteger s = params.spin();
    DickeSector sector{s, parity, {}};
    HalfInteger m = parity == Parity::even ? s : s - 1;
    for (; m >= -s; m = m - 2) {
        sector.m_values.push_back(m);
    }
    return sector;
}

/// Coupling <M+2| S_+^2 |M> = sqrt[(S(S+1)-M(M+1)) (S(S+1)-(M+1)(M+2))].
inline double double_ladder_coefficient(HalfInteger s, HalfInteger m)
{
    return std::sqrt(detail::ladder_squared(s, m) * detail::ladder_squared(s, m + 1));
}

/// Restriction of the LMG Hamiltonian to one parity sector, over the sector's m_values.
///
/// Uses S_x^2 + gamma S_y^2 = ((1+gamma)/4)(S_+S_- + S_-S_+) + ((1-gamma)/4)(S_+^2 + S_-^2):
///   diagonal(M)        = -((1+gamma)/(2N)) (S(S+1) - M^2) - h M
///   offdiagonal(M,M+2) = -((1-gamma)/(4N)) sqrt[(S(S+1)-M(M+1)) (S(S+1)-(M+1)(M+2))]
/// No constant shift is applied.
inline TridiagonalMatrix build_sector_matrix(const ModelParams &params, const DickeSector &sector)
{
    const HalfInteger s = params.spin();
    if (sector.total_spin != s) {
        throw UsageError("build_sector_matrix: sector spin " + sector.total_spin.to_string() +
                         " does not match N/2 = " + s.to_string());
    }
    if (sector.m_values.empty()) {
        throw UsageError("build_sector_matrix: empty sector");
    }
    for (std::size_t i = 0; i < sector.m_values.size(); ++i) {
        const HalfInteger m = sector.m_values[i];
        if (parity_of(s, m) != sector.parity || (i > 0 && sector.m_values[i - 1] - m != HalfInteger(2))) {
            throw UsageError("build_sector_matrix: sector m_values are inconsistent with its parity");
        }
    }

    const double n = params.n_spins();
    const double g = params.gamma();
    const double ss1 = s.value() * (s.value() + 1.0);
    const double diag_scale = -(1.0 + g) / (2.0 * n);
    const double off_scale = -(1.0 - g) / (4.0 * n);

    const std::size_t dim = sector.dimension();
    std::vector<double> diagonal(dim);
    std::vector<double> offdiagonal(dim - 1);
    for (std::size_t i = 0; i < dim; ++i) {
        const double m = sector.m_values[i].value();
        diagonal[i] = diag_scale * (ss1 - m * m) - params.h() * m;
    }
    for (std::size_t i = 0; i + 1 < dim; ++i) {
        offdiagonal[i] = off_scale * double_ladder_coefficient(s, sector.m_values[i + 1]);
    }
    return TridiagonalMatrix(std::move(diagonal), std::move(offdiagonal));
}

} // namespace lmg

#endif
