#include "kproj/projform.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/QR>

namespace kproj {

CMatrix BlockForm::unitary() const
{
    CMatrix w(dim(), dim());
    w << basis_range, basis_perp;
    return w;
}

CMatrix BlockForm::to_ambient(const CMatrix& block) const
{
    const CMatrix w = unitary();
    return w * block * w.adjoint();
}

CMatrix BlockForm::to_block(const CMatrix& ambient) const
{
    const CMatrix w = unitary();
    return w.adjoint() * ambient * w;
}

CMatrix BlockForm::reassemble() const
{
    const Eigen::Index n = dim(), r = rank();
    CMatrix block = CMatrix::Zero(n, n);
    block.topLeftCorner(r, r).setIdentity();
    block.topRightCorner(r, n - r) = p1;
    return to_ambient(block);
}

bool validate_idempotent(const CMatrix& p, const ToleranceConfig& tol)
{
    require_square(p, "validate_idempotent");
    require_finite(p, "validate_idempotent");
    return (p * p - p).norm() <= tol.residual_tol * tolerance_scale(p);
}

void require_idempotent(const CMatrix& p, const ToleranceConfig& tol, std::string_view where)
{
    if (!validate_idempotent(p, tol))
        throw Error(ErrorCode::NotIdempotent,
                    std::string(where) + ": |P^2 - P|_F = " + std::to_string((p * p - p).norm()));
}

BlockForm block_form(const CMatrix& p, const ToleranceConfig& tol)
{
    require_idempotent(p, tol, "block_form");
    SubspaceBases sb = fundamental_subspaces(p, tol);
    BlockForm bf{std::move(sb.range), std::move(sb.left_null), CMatrix()};
    bf.p1 = bf.basis_range.adjoint() * p * bf.basis_perp;
    return bf;
}

KernelProjectionRoutes kernel_projection_routes(const CMatrix& p, const ToleranceConfig& tol)
{
    const BlockForm bf = block_form(p, tol);
    const CMatrix& u = bf.basis_range;
    const CMatrix& v = bf.basis_perp;

    const CMatrix ker_p1 = kernel_projection(bf.p1, tol);
    const CMatrix ker_p1_adj = kernel_projection(bf.p1.adjoint(), tol);

    KernelProjectionRoutes out;
    out.sum_direct = spectral_parts(p + p.adjoint(), tol).p_ker;
    out.sum_block = v * ker_p1 * v.adjoint();
    out.diff_direct = kernel_projection(p - p.adjoint(), tol);
    out.diff_block = u * ker_p1_adj * u.adjoint() + v * ker_p1 * v.adjoint();
    return out;
}

KernelProjections kernel_projections(const CMatrix& p, const ToleranceConfig& tol)
{
    const KernelProjectionRoutes routes = kernel_projection_routes(p, tol);
    const double bound = tol.residual_tol * tolerance_scale(p);
    const double sum_gap = (routes.sum_direct - routes.sum_block).norm();
    const double diff_gap = (routes.diff_direct - routes.diff_block).norm();
    if (sum_gap > bound)
        throw Error(ErrorCode::InternalMismatch,
                    "N(P+P*) projections disagree by " + std::to_string(sum_gap));
    if (diff_gap > bound)
        throw Error(ErrorCode::InternalMismatch,
                    "N(P-P*) projections disagree by " + std::to_string(diff_gap));
    return {routes.sum_direct, routes.diff_direct};
}

CMatrix haar_unitary(Eigen::Index n, Rng& rng)
{
    if (n == 0) return CMatrix(0, 0);
    std::normal_distribution<double> normal(0.0, std::numbers::sqrt2 / 2.0);
    CMatrix z(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) z(i, j) = Complex(normal(rng), normal(rng));

    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
    const CMatrix& r = qr.matrixQR();
    for (Eigen::Index k = 0; k < n; ++k) {
        const double mag = std::abs(r(k, k));
        if (mag > 0.0) q.col(k) *= r(k, k) / mag;
    }
    return q;
}

CMatrix random_corner(Eigen::Index r, Eigen::Index c, double scale, Rng& rng)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    CMatrix b(r, c);
    for (Eigen::Index j = 0; j < c; ++j)
        for (Eigen::Index i = 0; i < r; ++i) {
            const double radius = scale * std::sqrt(unit(rng));
            const double angle = 2.0 * std::numbers::pi * unit(rng);
            b(i, j) = std::polar(radius, angle);
        }
    return b;
}

CMatrix random_idempotent(Eigen::Index n, Eigen::Index r, double corner_scale, std::uint64_t seed,
                          Eigen::Index zero_corner_cols)
{
    if (n < 0 || r < 0 || r > n)
        throw Error(ErrorCode::BadRank,
                    "random_idempotent: need 0 <= r <= n, got r=" + std::to_string(r) +
                        " n=" + std::to_string(n));
    if (zero_corner_cols < 0 || zero_corner_cols > n - r)
        throw Error(ErrorCode::BadRank, "random_idempotent: zero_corner_cols out of range");
    if (!(corner_scale >= 0.0) || !std::isfinite(corner_scale))
        throw Error(ErrorCode::InvalidArgument, "random_idempotent: corner_scale must be >= 0");

    if (r == n) return identity(n);
    if (r == 0) return CMatrix::Zero(n, n);

    Rng rng(seed);
    const CMatrix w = haar_unitary(n, rng);
    CMatrix b = random_corner(r, n - r, corner_scale, rng);
    b.rightCols(zero_corner_cols).setZero();
    const double bnorm = spectral_norm(b);
    if (bnorm > kMaxCornerNorm) b *= kMaxCornerNorm / bnorm;

    CMatrix block = CMatrix::Zero(n, n);
    block.topLeftCorner(r, r).setIdentity();
    block.topRightCorner(r, n - r) = b;
    return w * block * w.adjoint();
}

CMatrix random_symmetry(Eigen::Index k, Rng& rng)
{
    if (k == 0) return CMatrix(0, 0);
    const CMatrix q = haar_unitary(k, rng);
    std::bernoulli_distribution coin(0.5);
    Eigen::VectorXcd signs(k);
    for (Eigen::Index i = 0; i < k; ++i) signs(i) = coin(rng) ? 1.0 : -1.0;
    const CMatrix j = q * signs.asDiagonal() * q.adjoint();
    return (j + j.adjoint()) / 2.0;
}

CMatrix random_symmetry_on(const CMatrix& basis, std::uint64_t seed, const ToleranceConfig& tol)
{
    require_finite(basis, "random_symmetry_on");
    const Eigen::Index k = basis.cols();
    const double gram_gap = (basis.adjoint() * basis - identity(k)).norm();
    if (gram_gap > tol.residual_tol * std::max<double>(1.0, static_cast<double>(k)))
        throw Error(ErrorCode::NotOrthonormal,
                    "random_symmetry_on: |B*B - I|_F = " + std::to_string(gram_gap));
    Rng rng(seed);
    return random_symmetry(k, rng);
}

}  // namespace kproj
