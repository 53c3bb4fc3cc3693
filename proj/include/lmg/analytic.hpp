#ifndef LMG_ANALYTIC_HPP
#define LMG_ANALYTIC_HPP

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "lmg/errors.hpp"
#include "lmg/half_integer.hpp"
#include "lmg/spin.hpp"

namespace lmg
{

enum class PhaseLabel { symmetric, broken, critical };

inline std::string_view to_string(PhaseLabel p) noexcept
{
    switch (p) {
    case PhaseLabel::symmetric:
        return "symmetric";
    case PhaseLabel::broken:
        return "broken";
    case PhaseLabel::critical:
        return "critical";
    }
    return "?";
}

inline PhaseLabel phase_of(double h) noexcept
{
    if (h > 1.0) {
        return PhaseLabel::symmetric;
    }
    return h < 1.0 ? PhaseLabel::broken : PhaseLabel::critical;
}

/// Thermodynamic-limit moments and figures of merit from the bosonic expansion.
struct TlPrediction {
    double sx2;
    double sy2;
    /// Broken phase: 1/((N+2)(1-h^2)). Symmetric phase: sqrt((h-1)/(h-gamma)).
    double chi2;
    /// Broken phase: 1/N. Symmetric phase: same as chi2.
    double chi2_leading;
    double xi1_2;
    PhaseLabel phase;
};

struct CriticalExponents {
    double chi2_exponent;
    double xi2_exponent;
    double qcr_exponent;
    /// 4<S_x^2>/N^2 ~ N^sx2_moment_exponent at h = 1
    double sx2_moment_exponent;
    /// 4<S_y^2>/N^2 ~ N^sy2_moment_exponent at h = 1
    double sy2_moment_exponent;
};

namespace detail
{
inline void check_dicke(int n_spins, HalfInteger m, const char *where)
{
    if (n_spins < 1) {
        throw DomainError(std::string(where) + ": N must be >= 1");
    }
    check_magnetic(HalfInteger::from_twice(n_spins), m, where);
}
} // namespace detail

/// Energy of |N/2, M> at gamma = 1: (2/N)(M - hN/2)^2 - (N/2)(1 + h^2).
inline double isotropic_energy(int n_spins, HalfInteger m, double h)
{
    detail::check_dicke(n_spins, m, "isotropic_energy");
    const double n = n_spins;
    const double shifted = m.value() - h * n / 2.0;
    return 2.0 / n * shifted * shifted - n / 2.0 * (1.0 + h * h);
}

/// Ground-state magnetic number at gamma = 1. At a level crossing the larger M wins.
inline HalfInteger isotropic_ground_m(int n_spins, double h)
{
    if (n_spins < 1) {
        throw DomainError("isotropic_ground_m: N must be >= 1");
    }
    if (!(h >= 0.0)) {
        throw DomainError("isotropic_ground_m: h must be >= 0");
    }
    const HalfInteger s = HalfInteger::from_twice(n_spins);
    if (h >= 1.0) {
        return s;
    }
    // round half down, so ties map to the larger M
    const double x = n_spins * (1.0 - h) / 2.0;
    const int steps = static_cast<int>(std::ceil(x - 0.5));
    return s - steps;
}

/// Fields h_j = 1 - (2j+1)/N > 0 where |S,S-j> and |S,S-j-1> cross.
inline std::vector<double> isotropic_level_crossings(int n_spins)
{
    if (n_spins < 1) {
        throw DomainError("isotropic_level_crossings: N must be >= 1");
    }
    std::vector<double> out;
    for (int j = 0;; ++j) {
        const double hj = 1.0 - (2.0 * j + 1.0) / n_spins;
        if (!(hj > 0.0)) {
            break;
        }
        out.push_back(hj);
    }
    return out;
}

/// Polar angle of the mean-field magnetization: 0 for h >= 1, arccos h below.
inline double mean_field_angle(double h)
{
    if (!(h >= 0.0)) {
        throw DomainError("mean_field_angle: h must be >= 0");
    }
    return h >= 1.0 ? 0.0 : std::acos(h);
}

/// Classical energy per spin-coherent state |theta, phi>.
inline double mean_field_energy(int n_spins, double gamma, double h, double theta, double phi) noexcept
{
    const double st = std::sin(theta);
    const double cp = std::cos(phi);
    const double sp = std::sin(phi);
    return -n_spins * (0.5 * st * st * (cp * cp + gamma * sp * sp) + h * std::cos(theta));
}

/// Bogoliubov parameter tanh(theta) = (m^2-gamma)/(2hm - 3m^2 - gamma + 2), m = cos(theta_0) = min(h, 1).
inline double hp_epsilon(double h, double gamma)
{
    if (h == 1.0) {
        throw CriticalDivergence("hp_epsilon: critical point h = 1");
    }
    const double m = h < 1.0 ? h : 1.0;
    const double eps = (m * m - gamma) / (2.0 * h * m - 3.0 * m * m - gamma + 2.0);
    if (!(std::abs(eps) < 1.0)) {
        throw CriticalDivergence("hp_epsilon: |epsilon| >= 1, no Bogoliubov rotation exists");
    }
    return eps;
}

/// Thermodynamic-limit prediction for (h, gamma) at size N.
///
/// Symmetric phase (h > 1):
///   <S_x^2> = (N/4) sqrt((h-gamma)/(h-1)),  <S_y^2> = (N/4) sqrt((h-1)/(h-gamma)),
///   chi^2 = xi_1^2 = sqrt((h-1)/(h-gamma)).
/// Broken phase (h < 1, gamma < 1):
///   <S_x^2> = (N^2/4 + N/2)(1-h^2) + (N/4)[(1-gamma)h^2 - (2-h^2-gamma)(1-h^2)] / sqrt((1-h^2)(1-gamma)),
///   <S_y^2> = (N/4) sqrt((1-h^2)/(1-gamma)),
///   xi_1^2 = sqrt((1-h^2)/(1-gamma)),  chi^2 = 1/((N+2)(1-h^2)) ~ 1/N.
inline TlPrediction tl_prediction(double h, double gamma, int n_spins)
{
    if (!(h >= 0.0) || !(gamma >= 0.0 && gamma <= 1.0) || n_spins < 1) {
        throw DomainError("tl_prediction: requires h >= 0, 0 <= gamma <= 1, N >= 1");
    }
    const double n = n_spins;
    switch (phase_of(h)) {
    case PhaseLabel::critical:
        throw CriticalDivergence("tl_prediction: moments diverge at h = 1");
    case PhaseLabel::symmetric: {
        const double ratio = std::sqrt((h - 1.0) / (h - gamma));
        return {n / 4.0 / ratio, n / 4.0 * ratio, ratio, ratio, ratio, PhaseLabel::symmetric};
    }
    case PhaseLabel::broken:
        break;
    }
    if (gamma == 1.0) {
        throw IsotropicBrokenPhase("tl_prediction: broken phase at gamma = 1 has Dicke ground states");
    }
    const double q = 1.0 - h * h;
    const double g = 1.0 - gamma;
    const double sx2 = (n * n / 4.0 + n / 2.0) * q + n / 4.0 * (g * h * h - (2.0 - h * h - gamma) * q) / std::sqrt(q * g);
    const double xi1 = std::sqrt(q / g);
    return {sx2, n / 4.0 * xi1, 1.0 / ((n + 2.0) * q), 1.0 / n, xi1, PhaseLabel::broken};
}

/// Broken-phase field where xi_1^2 crosses 1: sqrt(gamma).
inline double squeezing_boundary(double gamma)
{
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw DomainError("squeezing_boundary: gamma must lie in [0, 1]");
    }
    return std::sqrt(gamma);
}

/// Finite-size exponents at h = 1: chi^2 ~ N^(-2/3), xi^2 ~ N^(-2/3), qcr ~ N^(-5/6).
inline constexpr CriticalExponents critical_scaling_prediction() noexcept
{
    return {-2.0 / 3.0, -2.0 / 3.0, -5.0 / 6.0, -2.0 / 3.0, -4.0 / 3.0};
}

} // namespace lmg

#endif
