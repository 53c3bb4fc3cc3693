#ifndef LMG_METROLOGY_HPP
#define LMG_METROLOGY_HPP

#include <cmath>
#include <limits>
#include <numbers>

#include "lmg/errors.hpp"
#include "lmg/ground_state.hpp"

namespace lmg
{

/// Second moments of a collective-spin state whose mean spin lies along z.
struct ObservableSet {
    double sz_mean;
    double sz2;
    double sx2;
    double sy2;
    /// <{S_x, S_y}>
    double cross;
};

struct TransverseExtrema {
    double vmin;
    double vmax;
    double theta_min;
    double theta_max;
};

/// Phase-estimation figures of merit. xi2_2 is +inf when the mean spin vanishes.
struct MetrologyReport {
    double chi2;
    double xi1_2;
    double xi2_2;
    double fisher;
    double qcr;
    double shot_noise;

    [[nodiscard]] bool xi2_defined() const noexcept { return std::isfinite(xi2_2); }
};

/// Moments of a parity-sector state. <{S_x,S_y}> vanishes identically inside a sector.
inline ObservableSet transverse_moments(const GroundState &gs)
{
    const auto &m_values = gs.sector.m_values;
    const auto &c = gs.amplitudes;
    if (c.size() != m_values.size()) {
        throw UsageError("transverse_moments: amplitude count does not match the sector dimension");
    }
    double norm = 0.0;
    for (double x : c) {
        norm += x * x;
    }
    if (std::abs(norm - 1.0) > 1e-10) {
        throw UsageError("transverse_moments: state is not normalized");
    }

    const HalfInteger s = gs.sector.total_spin;
    const double ss1 = s.value() * (s.value() + 1.0);
    double sz = 0.0;
    double sz2 = 0.0;
    double diag = 0.0;
    double coupling = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double m = m_values[i].value();
        const double p = c[i] * c[i];
        sz += p * m;
        sz2 += p * m * m;
        diag += p * (ss1 - m * m);
        if (i + 1 < c.size()) {
            // m_values descend: entry i+1 is M, entry i is M+2
            coupling += c[i + 1] * c[i] * double_ladder_coefficient(s, m_values[i + 1]);
        }
    }
    diag *= 0.5;
    coupling *= 0.5;
    return {sz, sz2, diag + coupling, diag - coupling, 0.0};
}

/// Transverse variance V(theta) = cos^2 sx2 + sin^2 sy2 + sin cos cross.
inline double transverse_variance(const ObservableSet &obs, double theta) noexcept
{
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return c * c * obs.sx2 + s * s * obs.sy2 + s * c * obs.cross;
}

/// Extrema of V(theta) over theta in [0, pi). Both angles are 0 for an isotropic profile.
inline TransverseExtrema extremal_transverse_variance(const ObservableSet &obs) noexcept
{
    const double mean = 0.5 * (obs.sx2 + obs.sy2);
    const double half_diff = 0.5 * (obs.sx2 - obs.sy2);
    const double half_cross = 0.5 * obs.cross;
    const double radius = std::hypot(half_diff, half_cross);
    if (radius == 0.0) {
        return {mean, mean, 0.0, 0.0};
    }
    double theta_max = 0.5 * std::atan2(half_cross, half_diff);
    if (theta_max < 0.0) {
        theta_max += std::numbers::pi;
    }
    double theta_min = theta_max + 0.5 * std::numbers::pi;
    if (theta_min >= std::numbers::pi) {
        theta_min -= std::numbers::pi;
    }
    return {mean - radius, mean + radius, theta_min, theta_max};
}

/// Pure-state QFI for the generator cos(theta) S_x + sin(theta) S_y: 4 V(theta).
inline double qfi(const GroundState &gs, double theta) { return 4.0 * transverse_variance(transverse_moments(gs), theta); }

namespace detail
{
inline MetrologyReport report_from_moments(int n_spins, double vmin, double vmax, double sz_mean)
{
    const double n = n_spins;
    const double fisher = 4.0 * vmax;
    const double xi2 = std::abs(sz_mean) <= 1e-12 ? std::numeric_limits<double>::infinity() : n * vmin / (sz_mean * sz_mean);
    return {n / fisher, 4.0 * vmin / n, xi2, fisher, 1.0 / std::sqrt(fisher), 1.0 / std::sqrt(n)};
}
} // namespace detail

/// chi^2 = N/(4 vmax), xi_1^2 = 4 vmin/N, xi_2^2 = N vmin/<S_z>^2, F = 4 vmax, qcr = 1/sqrt(F).
inline MetrologyReport report(const GroundState &gs)
{
    const auto obs = transverse_moments(gs);
    const auto ext = extremal_transverse_variance(obs);
    return detail::report_from_moments(gs.params.n_spins(), ext.vmin, ext.vmax, obs.sz_mean);
}

/// Closed-form figures for the Dicke state |N/2, M>.
inline MetrologyReport dicke_metrics(int n_spins, HalfInteger m)
{
    if (n_spins < 1) {
        throw DomainError("dicke_metrics: N must be >= 1");
    }
    const HalfInteger s = HalfInteger::from_twice(n_spins);
    detail::check_magnetic(s, m, "dicke_metrics");
    const double n = n_spins;
    const double mv = m.value();
    const double sv = s.value();
    const double vmin = (sv * sv + sv - mv * mv) / 2.0;
    const double chi2 = n / (4.0 * vmin);
    const double fisher = n / chi2;
    const double xi2 = m.twice() == 0 ? std::numeric_limits<double>::infinity() : n * vmin / (mv * mv);
    return {chi2, 1.0 / chi2, xi2, fisher, 1.0 / std::sqrt(fisher), 1.0 / std::sqrt(n)};
}

/// Figures for the cat state (|S,S> + |S,-S>)/sqrt(2).
///
/// The largest variance is (Delta S_z)^2 = S^2, so F = N^2, chi^2 = 1/N and qcr = 1/N.
/// The mean spin vanishes for N >= 2, so xi_2^2 is reported as +inf. xi_1^2 uses the
/// smaller of <S_x^2>, <S_y^2>; these are S/2 each except for N = 2, where S_+^2 links the two
/// components and gives <S_x^2> = 1, <S_y^2> = 0.
inline MetrologyReport cat_state_metrics(int n_spins)
{
    if (n_spins < 1) {
        throw DomainError("cat_state_metrics: N must be >= 1");
    }
    const double n = n_spins;
    const double s = n / 2.0;
    const double transverse = s / 2.0;
    const double coupling = n_spins == 2 ? 0.5 : 0.0;
    const double vmin = transverse - coupling;
    const double fisher = 4.0 * s * s;
    return {n / fisher, 4.0 * vmin / n, std::numeric_limits<double>::infinity(), fisher, 1.0 / std::sqrt(fisher),
            1.0 / std::sqrt(n)};
}

} // namespace lmg

#endif
