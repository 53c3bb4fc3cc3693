#ifndef LMG_SCALING_HPP
#define LMG_SCALING_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "lmg/errors.hpp"

namespace lmg
{

/// One (N, value) sample of a size-dependent quantity.
struct ScalingPoint {
    double n;
    double value;
};

/// value ~ amplitude * N^exponent
struct ScalingFit {
    double exponent;
    double amplitude;
    double r_squared;
    std::size_t points_used;
};

struct LinearFit {
    double slope;
    double intercept;
    double r_squared;
};

/// Ordinary least squares y = slope x + intercept. r^2 is 1 when y has no variance.
inline LinearFit fit_linear(std::span<const ScalingPoint> points)
{
    if (points.size() < 2) {
        throw UsageError("fit_linear: needs at least 2 points");
    }
    const double count = static_cast<double>(points.size());
    double mx = 0.0;
    double my = 0.0;
    for (const auto &p : points) {
        mx += p.n;
        my += p.value;
    }
    mx /= count;
    my /= count;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (const auto &p : points) {
        const double dx = p.n - mx;
        const double dy = p.value - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) {
        throw DomainError("fit_linear: x values have no variance");
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss_res = 0.0;
    for (const auto &p : points) {
        const double r = p.value - (slope * p.n + intercept);
        ss_res += r * r;
    }
    const double r2 = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    return {slope, intercept, r2};
}

namespace detail
{
inline std::vector<ScalingPoint> log_points(std::span<const ScalingPoint> points, const char *where)
{
    std::vector<ScalingPoint> out;
    out.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto &p = points[i];
        if (!(p.n > 0.0) || !(p.value > 0.0)) {
            throw DomainError(std::string(where) + ": N and values must be positive");
        }
        if (i > 0 && !(p.n > points[i - 1].n)) {
            throw UsageError(std::string(where) + ": N must be strictly increasing");
        }
        out.push_back({std::log(p.n), std::log(p.value)});
    }
    return out;
}
} // namespace detail

/// Least-squares line through (ln N, ln value).
inline ScalingFit fit_power_law(std::span<const ScalingPoint> points)
{
    if (points.size() < 3) {
        throw UsageError("fit_power_law: needs at least 3 points");
    }
    const auto logs = detail::log_points(points, "fit_power_law");
    const double first = logs.front().value;
    if (std::all_of(logs.begin(), logs.end(), [first](const ScalingPoint &p) { return p.value == first; })) {
        throw DomainError("fit_power_law: values have no variance, r^2 is undefined");
    }
    const auto line = fit_linear(logs);
    return {line.slope, std::exp(line.intercept), line.r_squared, points.size()};
}

/// Slopes ln(v_{k+1}/v_k) / ln(N_{k+1}/N_k) between consecutive points.
inline std::vector<double> local_exponents(std::span<const ScalingPoint> points)
{
    if (points.size() < 2) {
        throw UsageError("local_exponents: needs at least 2 points");
    }
    const auto logs = detail::log_points(points, "local_exponents");
    std::vector<double> out;
    out.reserve(points.size() - 1);
    for (std::size_t k = 0; k + 1 < logs.size(); ++k) {
        out.push_back((logs[k + 1].value - logs[k].value) / (logs[k + 1].n - logs[k].n));
    }
    return out;
}

} // namespace lmg

#endif
