// Test-only reference implementations. Nothing here calls the tridiagonal pipeline:
// sector matrices come from explicit N-qubit Pauli sums, and full-block ground states come from
// dense matrices in the (N+1)-dimensional S = N/2 multiplet.
#ifndef LMG_TESTS_BRUTE_FORCE_HPP
#define LMG_TESTS_BRUTE_FORCE_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "lmg/metrology.hpp"
#include "lmg/spin.hpp"
#include "lmg/tridiagonal.hpp"

namespace lmg::oracle
{

using cplx = std::complex<double>;
using StateVector = std::vector<cplx>;

/// |S,M> in the 2^N product basis. Bit set = spin down (sigma_z = -1).
inline StateVector dicke_product_state(int n, HalfInteger m)
{
    const int downs = (n - m.twice()) / 2;
    const std::size_t dim = std::size_t{1} << n;
    StateVector v(dim, 0.0);
    std::size_t count = 0;
    for (std::size_t b = 0; b < dim; ++b) {
        if (std::popcount(b) == downs) {
            ++count;
        }
    }
    const double amp = 1.0 / std::sqrt(static_cast<double>(count));
    for (std::size_t b = 0; b < dim; ++b) {
        if (std::popcount(b) == downs) {
            v[b] = amp;
        }
    }
    return v;
}

/// sum_i sigma_alpha^i / 2 applied to v.
inline StateVector apply_sx(int n, const StateVector &v)
{
    StateVector out(v.size(), 0.0);
    for (std::size_t b = 0; b < v.size(); ++b) {
        for (int i = 0; i < n; ++i) {
            out[b ^ (std::size_t{1} << i)] += 0.5 * v[b];
        }
    }
    return out;
}

inline StateVector apply_sy(int n, const StateVector &v)
{
    const cplx i_unit(0.0, 1.0);
    StateVector out(v.size(), 0.0);
    for (std::size_t b = 0; b < v.size(); ++b) {
        for (int i = 0; i < n; ++i) {
            const std::size_t bit = std::size_t{1} << i;
            // sigma_y |up> = i |down>, sigma_y |down> = -i |up>
            const cplx phase = (b & bit) ? -i_unit : i_unit;
            out[b ^ bit] += 0.5 * phase * v[b];
        }
    }
    return out;
}

inline StateVector apply_sz(int n, const StateVector &v)
{
    StateVector out(v.size(), 0.0);
    for (std::size_t b = 0; b < v.size(); ++b) {
        const int downs = std::popcount(b);
        out[b] = 0.5 * (n - 2 * downs) * v[b];
    }
    return out;
}

inline StateVector apply_splus(int n, const StateVector &v)
{
    StateVector out(v.size(), 0.0);
    for (std::size_t b = 0; b < v.size(); ++b) {
        for (int i = 0; i < n; ++i) {
            const std::size_t bit = std::size_t{1} << i;
            if (b & bit) {
                out[b ^ bit] += v[b];
            }
        }
    }
    return out;
}

inline cplx inner(const StateVector &a, const StateVector &b)
{
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

/// H v with H = -(S_x^2 + gamma S_y^2)/N - h S_z on the product space.
inline StateVector apply_lmg(const ModelParams &p, const StateVector &v)
{
    const int n = p.n_spins();
    const auto xx = apply_sx(n, apply_sx(n, v));
    const auto yy = apply_sy(n, apply_sy(n, v));
    const auto z = apply_sz(n, v);
    StateVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = -(xx[i] + p.gamma() * yy[i]) / static_cast<double>(n) - p.h() * z[i];
    }
    return out;
}

/// <S,M_i| H |S,M_j> over the sector's m_values, from Pauli sums. Row-major.
inline std::vector<cplx> pauli_sector_matrix(const ModelParams &p, const DickeSector &sector)
{
    const std::size_t d = sector.dimension();
    std::vector<StateVector> basis;
    for (auto m : sector.m_values) {
        basis.push_back(dicke_product_state(p.n_spins(), m));
    }
    std::vector<cplx> out(d * d);
    for (std::size_t j = 0; j < d; ++j) {
        const auto hv = apply_lmg(p, basis[j]);
        for (std::size_t i = 0; i < d; ++i) {
            out[i * d + j] = inner(basis[i], hv);
        }
    }
    return out;
}

/// Dense spin matrices over M = S, S-1, ..., -S. S_y = -i A with A real antisymmetric.
struct DenseSpin {
    std::size_t dim;
    std::vector<double> m;
    std::vector<double> sx;
    std::vector<double> a;
};

inline DenseSpin dense_spin(int n)
{
    const double s = 0.5 * n;
    const std::size_t d = static_cast<std::size_t>(n) + 1;
    DenseSpin out{d, std::vector<double>(d), std::vector<double>(d * d, 0.0), std::vector<double>(d * d, 0.0)};
    for (std::size_t i = 0; i < d; ++i) {
        out.m[i] = s - static_cast<double>(i);
    }
    // <M+1|S_+|M> sits at row i-1, column i (rows ordered by descending M)
    for (std::size_t i = 1; i < d; ++i) {
        const double mm = out.m[i];
        const double up = std::sqrt(s * (s + 1.0) - mm * (mm + 1.0));
        out.sx[(i - 1) * d + i] += 0.5 * up;
        out.sx[i * d + (i - 1)] += 0.5 * up;
        // S_y = (S_+ - S_-)/(2i) = -i (S_+ - S_-)/2
        out.a[(i - 1) * d + i] += 0.5 * up;
        out.a[i * d + (i - 1)] -= 0.5 * up;
    }
    return out;
}

inline std::vector<double> matmul(const std::vector<double> &x, const std::vector<double> &y, std::size_t d)
{
    std::vector<double> out(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            for (std::size_t j = 0; j < d; ++j) {
                out[i * d + j] += x[i * d + k] * y[k * d + j];
            }
        }
    }
    return out;
}

/// Full (N+1)-dimensional Hamiltonian: -(S_x^2 - gamma A^2)/N - h S_z, since S_y^2 = -A^2.
inline std::vector<double> full_block_matrix(const ModelParams &p)
{
    const auto spin = dense_spin(p.n_spins());
    const std::size_t d = spin.dim;
    const auto xx = matmul(spin.sx, spin.sx, d);
    const auto aa = matmul(spin.a, spin.a, d);
    std::vector<double> h(d * d);
    for (std::size_t i = 0; i < d * d; ++i) {
        h[i] = -(xx[i] - p.gamma() * aa[i]) / p.n_spins();
    }
    for (std::size_t i = 0; i < d; ++i) {
        h[i * d + i] -= p.h() * spin.m[i];
    }
    return h;
}

inline std::vector<double> matvec(const std::vector<double> &a, const std::vector<double> &v)
{
    const std::size_t d = v.size();
    std::vector<double> out(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            out[i] += a[i * d + j] * v[j];
        }
    }
    return out;
}

struct DenseReference {
    double energy;
    /// amplitudes over M = S, ..., -S
    std::vector<double> amplitudes;
    ObservableSet moments;
    /// true when the lowest level of the full block was degenerate and the even component was taken
    bool degenerate;
};

/// Moments of a real vector over the full M ladder, evaluated with dense matrices.
/// The anticommutator is evaluated in complex arithmetic: <{S_x, S_y}> = -i <S_x A + A S_x>.
inline ObservableSet dense_moments(int n, const std::vector<double> &v)
{
    const auto spin = dense_spin(n);
    const auto xv = matvec(spin.sx, v);
    const auto av = matvec(spin.a, v);
    double sz = 0.0;
    double sz2 = 0.0;
    double sx2 = 0.0;
    double sy2 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        sz += v[i] * v[i] * spin.m[i];
        sz2 += v[i] * v[i] * spin.m[i] * spin.m[i];
        sx2 += xv[i] * xv[i];
        sy2 += av[i] * av[i];
    }
    const auto xa = matmul(spin.sx, spin.a, spin.dim);
    const auto ax = matmul(spin.a, spin.sx, spin.dim);
    cplx cross = 0.0;
    const cplx minus_i(0.0, -1.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            cross += v[i] * minus_i * (xa[i * spin.dim + j] + ax[i * spin.dim + j]) * v[j];
        }
    }
    return {sz, sz2, sx2, sy2, std::abs(cross)};
}

/// Ground state of the full S = N/2 block by dense Jacobi diagonalization.
/// A degenerate lowest level (relative gap below 1e-9) is resolved to its even-parity member.
inline DenseReference dense_ground_state(const ModelParams &p)
{
    const std::size_t d = static_cast<std::size_t>(p.n_spins()) + 1;
    const auto sys = symmetric_eigensystem(full_block_matrix(p), d);
    const double e0 = sys.values[0];
    const double tol = 1e-9 * std::max(1.0, std::abs(e0));
    std::size_t multiplicity = 1;
    while (multiplicity < d && sys.values[multiplicity] - e0 < tol) {
        ++multiplicity;
    }
    std::vector<double> v = sys.vectors[0];
    if (multiplicity > 1) {
        // project each ground vector onto even parity (S - M even, i.e. even row index)
        double best = -1.0;
        for (std::size_t k = 0; k < multiplicity; ++k) {
            std::vector<double> proj = sys.vectors[k];
            for (std::size_t i = 1; i < d; i += 2) {
                proj[i] = 0.0;
            }
            double norm = 0.0;
            for (double x : proj) {
                norm += x * x;
            }
            if (norm > best) {
                best = norm;
                v = proj;
            }
        }
        const double norm = std::sqrt(best);
        for (double &x : v) {
            x /= norm;
        }
    }
    return {e0, v, dense_moments(p.n_spins(), v), multiplicity > 1};
}

} // namespace lmg::oracle

#endif
