#pragma once

// Test-only reference implementations. None of these touch Eigen's
// decompositions: Hermitian spectra come from cyclic Jacobi rotations on the
// real 2n x 2n embedding [[Re, -Im], [Im, Re]].

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Matrix = Eigen::MatrixXcd;
using Real = Eigen::MatrixXd;

struct RealEig {
    std::vector<double> values;
    Real vectors;  // column k pairs with values[k]
};

inline RealEig jacobi(Real a)
{
    const Eigen::Index n = a.rows();
    Real v = Real::Identity(n, n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (off < 1e-30 * std::max(1.0, a.squaredNorm())) break;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) < 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
    }
    RealEig out;
    out.vectors = v;
    for (Eigen::Index i = 0; i < n; ++i) out.values.push_back(a(i, i));
    return out;
}

inline Real embed(const Matrix& a)
{
    const Eigen::Index n = a.rows();
    Real e(2 * n, 2 * n);
    e.topLeftCorner(n, n) = a.real();
    e.topRightCorner(n, n) = -a.imag();
    e.bottomLeftCorner(n, n) = a.imag();
    e.bottomRightCorner(n, n) = a.real();
    return e;
}

/// Complex matrix whose real embedding is `e` (e must commute with the
/// embedded imaginary unit, as spectral functions of embeddings do).
inline Matrix unembed(const Real& e)
{
    const Eigen::Index n = e.rows() / 2;
    Matrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = {e(i, j), e(i + n, j)};
    return a;
}

/// f applied to the spectrum of a Hermitian matrix.
template <class F>
Matrix hermitian_apply(const Matrix& a, F f)
{
    const RealEig eig = jacobi(embed(a));
    const Eigen::Index m = eig.vectors.rows();
    Real out = Real::Zero(m, m);
    for (Eigen::Index k = 0; k < m; ++k)
        out += f(eig.values[static_cast<std::size_t>(k)]) * eig.vectors.col(k) * eig.vectors.col(k).transpose();
    return unembed(out);
}

inline Matrix proj_negative(const Matrix& a, double cut = 1e-9)
{
    return hermitian_apply(a, [cut](double x) { return x < -cut ? 1.0 : 0.0; });
}

inline Matrix proj_positive(const Matrix& a, double cut = 1e-9)
{
    return hermitian_apply(a, [cut](double x) { return x > cut ? 1.0 : 0.0; });
}

inline Matrix proj_kernel(const Matrix& a, double cut = 1e-9)
{
    return hermitian_apply(a, [cut](double x) { return std::abs(x) <= cut ? 1.0 : 0.0; });
}

/// Orthogonal projection onto N(t) for a general t, via the kernel of t*t.
inline Matrix kernel_of(const Matrix& t, double cut = 1e-9)
{
    return proj_kernel(t.adjoint() * t, cut);
}

/// Ascending eigenvalues of a Hermitian matrix (each appears once).
inline std::vector<double> eigenvalues(const Matrix& a)
{
    std::vector<double> v = jacobi(embed(a)).values;
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); i += 2) out.push_back(v[i]);
    return out;
}

inline double min_eig(const Matrix& a)
{
    const std::vector<double> v = eigenvalues(a);
    return v.empty() ? 0.0 : v.front();
}

/// Closed-form eigenvalues of a real symmetric 2x2 [[a, b], [b, c]], ascending.
inline std::pair<double, double> eig2(double a, double b, double c)
{
    const double mid = (a + c) / 2.0, rad = std::hypot((a - c) / 2.0, b);
    return {mid - rad, mid + rad};
}

/// Seeded generator of test inputs.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    std::uint64_t seed() { return rng_(); }

    Matrix complex(Eigen::Index r, Eigen::Index c, double bound)
    {
        Matrix m(r, c);
        for (Eigen::Index i = 0; i < r; ++i)
            for (Eigen::Index j = 0; j < c; ++j) m(i, j) = std::polar(bound * std::sqrt(uniform(0, 1)), uniform(0, 2 * M_PI));
        return m;
    }

    Matrix hermitian(Eigen::Index n, double bound)
    {
        const Matrix g = complex(n, n, bound);
        return (g + g.adjoint()) / 2.0;
    }

    Matrix unitary(Eigen::Index n)
    {
        Matrix q = complex(n, n, 1.0).householderQr().householderQ();
        return q;
    }

    /// Idempotent with range spanned by the first r columns of a random
    /// unitary and the given corner.
    Matrix idempotent(Eigen::Index n, Eigen::Index r, double corner)
    {
        const Matrix w = unitary(n);
        Matrix blk = Matrix::Zero(n, n);
        blk.topLeftCorner(r, r).setIdentity();
        blk.topRightCorner(r, n - r) = complex(r, n - r, corner);
        return w * blk * w.adjoint();
    }

    /// Symmetry with exactly k eigenvalues -1.
    Matrix symmetry(Eigen::Index n, Eigen::Index k)
    {
        const Matrix w = unitary(n);
        Eigen::VectorXcd d = Eigen::VectorXcd::Ones(n);
        for (Eigen::Index i = 0; i < k; ++i) d(i) = -1.0;
        return w * d.asDiagonal() * w.adjoint();
    }

private:
    std::mt19937_64 rng_;
};

inline Matrix mat2(std::complex<double> a, std::complex<double> b, std::complex<double> c, std::complex<double> d)
{
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

}  // namespace oracle
