#ifndef LMG_TRIDIAGONAL_HPP
#define LMG_TRIDIAGONAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lmg/errors.hpp"

namespace lmg
{

/// Real symmetric tridiagonal matrix. The off-diagonal is stored once, so symmetry is exact.
class TridiagonalMatrix
{
public:
    TridiagonalMatrix(std::vector<double> diagonal, std::vector<double> offdiagonal)
        : diagonal_(std::move(diagonal)), offdiagonal_(std::move(offdiagonal))
    {
        if (diagonal_.empty()) {
            throw UsageError("TridiagonalMatrix: dimension must be at least 1");
        }
        if (offdiagonal_.size() + 1 != diagonal_.size()) {
            throw UsageError("TridiagonalMatrix: off-diagonal must have length d-1");
        }
        auto finite = [](double x) { return std::isfinite(x); };
        if (!std::all_of(diagonal_.begin(), diagonal_.end(), finite) ||
            !std::all_of(offdiagonal_.begin(), offdiagonal_.end(), finite)) {
            throw UsageError("TridiagonalMatrix: entries must be finite");
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return diagonal_.size(); }
    [[nodiscard]] std::span<const double> diagonal() const noexcept { return diagonal_; }
    [[nodiscard]] std::span<const double> offdiagonal() const noexcept { return offdiagonal_; }

    /// ||diag||_inf + 2 ||off||_inf, an upper bound on the spectral radius.
    [[nodiscard]] double norm_bound() const noexcept
    {
        double d = 0.0;
        double e = 0.0;
        for (double x : diagonal_) {
            d = std::max(d, std::abs(x));
        }
        for (double x : offdiagonal_) {
            e = std::max(e, std::abs(x));
        }
        return d + 2.0 * e;
    }

    /// y = T x
    [[nodiscard]] std::vector<double> apply(std::span<const double> x) const
    {
        const std::size_t n = size();
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            double acc = diagonal_[i] * x[i];
            if (i > 0) {
                acc += offdiagonal_[i - 1] * x[i - 1];
            }
            if (i + 1 < n) {
                acc += offdiagonal_[i] * x[i + 1];
            }
            y[i] = acc;
        }
        return y;
    }

    /// Row-major dense copy.
    [[nodiscard]] std::vector<double> densify() const
    {
        const std::size_t n = size();
        std::vector<double> a(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            a[i * n + i] = diagonal_[i];
            if (i + 1 < n) {
                a[i * n + i + 1] = offdiagonal_[i];
                a[(i + 1) * n + i] = offdiagonal_[i];
            }
        }
        return a;
    }

private:
    std::vector<double> diagonal_;
    std::vector<double> offdiagonal_;
};

struct Eigenpair {
    double energy;
    std::vector<double> vector;
};

/// Full spectrum of a dense symmetric matrix. vectors[k] is the eigenvector of values[k]; values ascend.
struct DenseEigensystem {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
};

/// Residual tolerance a ground eigenpair of T must meet.
inline double ground_residual_tolerance(const TridiagonalMatrix &t) noexcept
{
    return 1e-10 * std::max(1.0, t.norm_bound());
}

/// Zero entries below the rounding floor, then flip v so that its first nonzero entry is positive.
inline void apply_sign_convention(std::vector<double> &v) noexcept
{
    // entries at the rounding floor carry no sign information
    double top = 0.0;
    for (double x : v) {
        top = std::max(top, std::abs(x));
    }
    const double floor = 4.0 * std::numeric_limits<double>::epsilon() * top;
    for (double &x : v) {
        if (std::abs(x) < floor) {
            x = 0.0;
        }
    }
    auto first = std::find_if(v.begin(), v.end(), [](double x) { return x != 0.0; });
    if (first != v.end() && *first < 0.0) {
        for (double &x : v) {
            x = -x;
        }
    }
}

namespace detail
{

inline double norm2(std::span<const double> v) noexcept
{
    double s = 0.0;
    for (double x : v) {
        s += x * x;
    }
    return std::sqrt(s);
}

inline double dot(std::span<const double> a, std::span<const double> b) noexcept
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

inline double residual_norm(const TridiagonalMatrix &t, std::span<const double> v, double lambda)
{
    auto tv = t.apply(v);
    double s = 0.0;
    for (std::size_t i = 0; i < tv.size(); ++i) {
        const double r = tv[i] - lambda * v[i];
        s += r * r;
    }
    return std::sqrt(s);
}

/// Number of eigenvalues strictly below x (Sturm sequence via the LDL^T pivots of T - xI).
inline std::size_t count_below(std::span<const double> d, std::span<const double> e, double x, double pivmin) noexcept
{
    std::size_t count = 0;
    double q = d[0] - x;
    if (std::abs(q) < pivmin) {
        q = -pivmin;
    }
    if (q < 0.0) {
        ++count;
    }
    for (std::size_t i = 1; i < d.size(); ++i) {
        q = d[i] - x - e[i - 1] * e[i - 1] / q;
        if (std::abs(q) < pivmin) {
            q = -pivmin;
        }
        if (q < 0.0) {
            ++count;
        }
    }
    return count;
}

struct Bracket {
    double lower;
    double upper;
};

/// Bisection bracket [lower, upper] of the smallest eigenvalue of an unreduced block.
inline Bracket smallest_eigenvalue_bracket(std::span<const double> d, std::span<const double> e)
{
    const std::size_t n = d.size();
    if (n == 1) {
        return {d[0], d[0]};
    }
    double scale = 0.0;
    double max_e2 = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double left = i > 0 ? std::abs(e[i - 1]) : 0.0;
        const double right = i + 1 < n ? std::abs(e[i]) : 0.0;
        lo = std::min(lo, d[i] - left - right);
        hi = std::min(hi, d[i]);
        scale = std::max(scale, std::abs(d[i]) + left + right);
        if (i + 1 < n) {
            max_e2 = std::max(max_e2, e[i] * e[i]);
        }
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, max_e2);
    const double margin = 4.0 * eps * std::max(scale, 1.0) + pivmin;
    lo -= margin;
    hi += margin;

    for (int iter = 0; iter < 256; ++iter) {
        const double width = hi - lo;
        if (width <= 1e-13 * std::max(std::abs(lo), std::abs(hi)) + 2.0 * eps * scale) {
            break;
        }
        const double mid = lo + 0.5 * width;
        if (count_below(d, e, mid, pivmin) >= 1) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return {lo, hi};
}

/// Solve (T - shift I) y = b in place by Gaussian elimination with partial pivoting.
/// Zero pivots are replaced by a tiny floor, as inverse iteration expects a nearly singular system.
inline void shifted_solve(std::span<const double> d_in, std::span<const double> e, double shift, std::vector<double> &b)
{
    const std::size_t n = d_in.size();
    std::vector<double> d(n);
    std::vector<double> dl(e.begin(), e.end());
    std::vector<double> du(e.begin(), e.end());
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = d_in[i] - shift;
        scale = std::max(scale, std::abs(d_in[i]) + (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < n ? std::abs(e[i]) : 0.0));
    }
    const double floor = std::numeric_limits<double>::epsilon() * std::max(scale, std::numeric_limits<double>::min());
    auto guard = [floor](double &p) {
        if (std::abs(p) < floor) {
            p = p < 0.0 ? -floor : floor;
        }
    };

    for (std::size_t i = 0; i + 1 < n; ++i) {
        const bool last = i + 2 == n;
        if (std::abs(d[i]) >= std::abs(dl[i])) {
            guard(d[i]);
            const double fact = dl[i] / d[i];
            d[i + 1] -= fact * du[i];
            b[i + 1] -= fact * b[i];
            dl[i] = 0.0;
        } else {
            const double fact = d[i] / dl[i];
            d[i] = dl[i];
            const double temp = d[i + 1];
            d[i + 1] = du[i] - fact * temp;
            if (!last) {
                dl[i] = du[i + 1];
                du[i + 1] = -fact * dl[i];
            }
            du[i] = temp;
            const double bt = b[i];
            b[i] = b[i + 1];
            b[i + 1] = bt - fact * b[i + 1];
        }
    }
    guard(d[n - 1]);
    b[n - 1] /= d[n - 1];
    if (n > 1) {
        b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    }
    for (std::size_t k = n - 2; k-- > 0;) {
        b[k] = (b[k] - du[k] * b[k + 1] - dl[k] * b[k + 2]) / d[k];
    }
}

/// Inverse iteration on one unreduced block, converging to the stated residual tolerance.
/// Up to two further inverse-iteration steps, kept while the residual keeps shrinking.
inline Eigenpair refine(const TridiagonalMatrix &block, std::span<const double> d, std::span<const double> e,
                        double shift, Eigenpair pair, double residual)
{
    for (int k = 0; k < 2; ++k) {
        std::vector<double> y = pair.vector;
        shifted_solve(d, e, shift, y);
        const double ny = norm2(y);
        if (!(ny > 0.0) || !std::isfinite(ny)) {
            break;
        }
        for (double &v : y) {
            v /= ny;
        }
        const double lambda = dot(y, block.apply(y));
        const double r = residual_norm(block, y, lambda);
        if (!(r < residual)) {
            break;
        }
        pair = {lambda, std::move(y)};
        residual = r;
    }
    return pair;
}

inline Eigenpair inverse_iteration(std::span<const double> d, std::span<const double> e, double shift, double tolerance)
{
    const std::size_t n = d.size();
    if (n == 1) {
        return {d[0], {1.0}};
    }
    const TridiagonalMatrix block(std::vector<double>(d.begin(), d.end()), std::vector<double>(e.begin(), e.end()));

    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = (i % 2 == 0 ? 1.0 : -1.0) / std::sqrt(static_cast<double>(n));
    }

    constexpr int max_iterations = 50;
    bool restarted = false;
    double previous = std::numeric_limits<double>::infinity();
    double residual = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < max_iterations; ++iter) {
        std::vector<double> y = x;
        shifted_solve(d, e, shift, y);
        const double ny = norm2(y);
        if (!(ny > 0.0) || !std::isfinite(ny)) {
            break;
        }
        for (double &v : y) {
            v /= ny;
        }
        const auto ty = block.apply(y);
        const double lambda = dot(y, ty);
        residual = residual_norm(block, y, lambda);
        if (residual <= tolerance) {
            return refine(block, d, e, shift, {lambda, std::move(y)}, residual);
        }
        if (iter > 0 && residual >= previous && !restarted) {
            // stagnation: restart once from a reproducible random vector
            restarted = true;
            std::mt19937_64 rng(0x5eedULL + n);
            std::uniform_real_distribution<double> dist(-1.0, 1.0);
            for (double &v : x) {
                v = dist(rng);
            }
            const double nx = norm2(x);
            for (double &v : x) {
                v /= nx;
            }
        } else {
            x = std::move(y);
        }
        previous = residual;
    }
    throw ConvergenceError("inverse iteration did not reach residual " + std::to_string(tolerance) +
                               " (last residual " + std::to_string(residual) + ")",
                           residual);
}

} // namespace detail

/// Smallest eigenvalue and normalized eigenvector of T.
///
/// The matrix is split wherever an off-diagonal entry is exactly zero. Each unreduced block's
/// smallest eigenvalue is bracketed by Sturm bisection; inverse iteration then runs on the block
/// holding the overall minimum (the first such block on ties) and the result is embedded with exact
/// zeros elsewhere. Throws ConvergenceError when the residual budget is not met in 50 iterations.
inline Eigenpair ground_eigenpair(const TridiagonalMatrix &t)
{
    const auto d = t.diagonal();
    const auto e = t.offdiagonal();
    const std::size_t n = t.size();

    std::size_t best_begin = 0;
    std::size_t best_end = 0;
    detail::Bracket best{};
    bool have_best = false;
    std::size_t begin = 0;
    while (begin < n) {
        std::size_t end = begin + 1;
        while (end < n && e[end - 1] != 0.0) {
            ++end;
        }
        const auto bracket = detail::smallest_eigenvalue_bracket(d.subspan(begin, end - begin), e.subspan(begin, end - begin - 1));
        const double tie_slack = bracket.upper - bracket.lower;
        if (!have_best || bracket.lower + bracket.upper < best.lower + best.upper - 2.0 * tie_slack) {
            best = bracket;
            best_begin = begin;
            best_end = end;
            have_best = true;
        }
        begin = end;
    }

    const std::size_t len = best_end - best_begin;
    auto block_pair = detail::inverse_iteration(d.subspan(best_begin, len), e.subspan(best_begin, len - 1),
                                                0.5 * (best.lower + best.upper), ground_residual_tolerance(t));

    std::vector<double> v(n, 0.0);
    std::copy(block_pair.vector.begin(), block_pair.vector.end(), v.begin() + static_cast<std::ptrdiff_t>(best_begin));
    apply_sign_convention(v);
    return {block_pair.energy, std::move(v)};
}

/// All eigenpairs of a dense symmetric n x n matrix (row-major) by cyclic Jacobi rotations.
/// Sweeps until the off-diagonal Frobenius norm is below 1e-14 of the full Frobenius norm.
inline DenseEigensystem symmetric_eigensystem(std::vector<double> a, std::size_t n)
{
    if (a.size() != n * n || n == 0) {
        throw UsageError("symmetric_eigensystem: matrix must be n x n with n >= 1");
    }
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        v[i * n + i] = 1.0;
    }
    double frob2 = 0.0;
    for (double x : a) {
        frob2 += x * x;
    }
    const double target = 1e-14 * std::sqrt(frob2);
    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j) {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        return std::sqrt(s);
    };

    constexpr int max_sweeps = 100;
    int sweep = 0;
    double off = off_norm();
    for (; sweep < max_sweeps && off > target; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) {
                    continue;
                }
                const double app = a[p * n + p];
                const double aqq = a[q * n + q];
                const double tau = (aqq - app) / (2.0 * apq);
                const double tt = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + tt * tt);
                const double s = tt * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k];
                    const double aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k * n + p];
                    const double vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
        off = off_norm();
    }
    if (off > target) {
        throw ConvergenceError("Jacobi sweeps did not converge", off);
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });

    DenseEigensystem out;
    out.values.reserve(n);
    out.vectors.reserve(n);
    for (std::size_t k : order) {
        out.values.push_back(a[k * n + k]);
        std::vector<double> col(n);
        for (std::size_t i = 0; i < n; ++i) {
            col[i] = v[i * n + k];
        }
        out.vectors.push_back(std::move(col));
    }
    return out;
}

/// Reference ground eigenpair by dense Jacobi diagonalization. Limited to d <= 64.
inline Eigenpair dense_oracle_eigenpair(const TridiagonalMatrix &t)
{
    if (t.size() > 64) {
        throw UsageError("dense_oracle_eigenpair: dimension " + std::to_string(t.size()) + " exceeds 64");
    }
    auto sys = symmetric_eigensystem(t.densify(), t.size());
    Eigenpair out{sys.values.front(), std::move(sys.vectors.front())};
    apply_sign_convention(out.vector);
    return out;
}

} // namespace lmg

#endif
