#include "kproj/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kproj/refs.hpp"

namespace kproj {

std::string_view to_string(SplitKind kind)
{
    return kind == SplitKind::ContractiveExpansive ? "ContractiveExpansive" : "PositiveNegative";
}

CMatrix bordered_matrix(const CMatrix& b)
{
    const Eigen::Index m = b.rows(), k = b.cols();
    CMatrix s = CMatrix::Zero(m + k, m + k);
    s.topLeftCorner(m, m).setIdentity();
    s.topRightCorner(m, k) = b;
    s.bottomLeftCorner(k, m) = b.adjoint();
    return s;
}

CMatrix negative_part_projection_closed_form(const CMatrix& b, const ToleranceConfig& tol)
{
    require_finite(b, "negative_part_projection");
    const Eigen::Index m = b.rows(), k = b.cols();
    const CMatrix gram = identity(m) + 4.0 * b * b.adjoint();
    const CMatrix t_inv = hermitian_function(gram, [](double x) { return 1.0 / std::sqrt(std::max(x, 1.0)); }, tol);
    const CMatrix v = polar(b.adjoint(), tol).v;  // k x m, b* = v |b*|

    CMatrix out(m + k, m + k);
    out.topLeftCorner(m, m) = (identity(m) - t_inv) / 2.0;
    out.topRightCorner(m, k) = -t_inv * b;
    out.bottomLeftCorner(k, m) = -b.adjoint() * t_inv;
    out.bottomRightCorner(k, k) = v * (identity(m) + t_inv) * v.adjoint() / 2.0;
    return out;
}

CMatrix negative_part_projection_formula(const CMatrix& b, const ToleranceConfig& tol)
{
    const CMatrix formula = negative_part_projection_closed_form(b, tol);
    const CMatrix s = bordered_matrix(b);
    const CMatrix oracle = spectral_parts(s, tol).p_minus;
    const double gap = (formula - oracle).norm();
    if (gap > tol.residual_tol * tolerance_scale(s))
        throw Error(ErrorCode::InternalMismatch,
                    "negative part projection: closed form and eigendecomposition differ by " +
                        std::to_string(gap));
    return formula;
}

void require_j_projection(const CMatrix& p, const CMatrix& j, const ToleranceConfig& tol)
{
    require_square(j, "require_j_projection");
    if (j.rows() != p.rows())
        throw Error(ErrorCode::DimensionMismatch, "J and P differ in size");
    if (!is_symmetry(j, tol)) throw Error(ErrorCode::NotSymmetry, "J is not a symmetry");
    const double res = (j * p * j - p.adjoint()).norm();
    if (res > tol.residual_tol * tolerance_scale(p))
        throw Error(ErrorCode::NotJProjection, "|JPJ - P*|_F = " + std::to_string(res));
}

namespace {

// J_kk (J_kk^2)^{-1/2} for a Hermitian diagonal block.
CMatrix normalize_block(const CMatrix& block, const ToleranceConfig& tol, const char* name)
{
    if (block.size() == 0) return block;
    const CMatrix h = (block + block.adjoint()) / 2.0;
    const CMatrix sq = h * h;
    const HermitianEig eig = hermitian_eig(sq, tol);
    const double smallest = eig.values(eig.values.size() - 1);
    if (smallest <= tol.rank_tol * std::max(1.0, eig.values(0)))
        throw Error(ErrorCode::SingularBlock,
                    std::string(name) + "^2 is numerically singular, smallest eigenvalue " +
                        std::to_string(smallest));
    RVector inv_root(eig.values.size());
    for (Eigen::Index i = 0; i < inv_root.size(); ++i) inv_root(i) = 1.0 / std::sqrt(eig.values(i));
    const CMatrix j = h * eig.vectors * inv_root.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    return (j + j.adjoint()) / 2.0;
}

}  // namespace

SymmetryParams extract_params(const CMatrix& p, const CMatrix& j, const ToleranceConfig& tol)
{
    require_idempotent(p, tol, "extract_params");
    require_j_projection(p, j, tol);

    const BlockForm bf = block_form(p, tol);
    const Eigen::Index r = bf.rank(), m = bf.dim() - r;
    const CMatrix jb = bf.to_block(j);

    SymmetryParams prm{normalize_block(jb.topLeftCorner(r, r), tol, "J11"),
                       normalize_block(jb.bottomRightCorner(m, m), tol, "J22")};

    const CMatrix rebuilt = assemble_symmetry(bf, SymmetryFamily::JProjection, prm, tol);
    const double gap = (rebuilt - j).norm();
    if (gap > tol.residual_tol * tolerance_scale(j))
        throw Error(ErrorCode::InternalMismatch,
                    "extracted parameters do not reassemble J, residual " + std::to_string(gap));
    return prm;
}

SplitResult contractive_expansive_split(const CMatrix& p, const CMatrix& j, const ToleranceConfig& tol)
{
    const SymmetryParams prm = extract_params(p, j, tol);
    const BlockForm bf = block_form(p, tol);
    const Eigen::Index n = bf.dim(), r = bf.rank(), m = n - r;
    const CMatrix id2 = identity(m);
    const CMatrix up = (id2 + prm.j2) / 2.0;    // J2+ on R(P)^perp
    const CMatrix down = (id2 - prm.j2) / 2.0;  // J2-

    CMatrix e1 = CMatrix::Zero(n, n), e2 = CMatrix::Zero(n, n);
    e1.topLeftCorner(r, r).setIdentity();
    e1.topRightCorner(r, m) = bf.p1 * up;
    e1.bottomRightCorner(m, m) = down;
    e2.topLeftCorner(r, r).setIdentity();
    e2.topRightCorner(r, m) = bf.p1 * down;
    e2.bottomRightCorner(m, m) = up;
    return {bf.to_ambient(e1), bf.to_ambient(e2), SplitKind::ContractiveExpansive};
}

SplitResult positive_negative_split(const CMatrix& p, const CMatrix& j, const ToleranceConfig& tol)
{
    require_idempotent(p, tol, "positive_negative_split");
    require_j_projection(p, j, tol);
    const CMatrix id = identity(p.rows());
    const SplitResult complement = contractive_expansive_split(id - p, j, tol);
    return {id - complement.e1, id - complement.e2, SplitKind::PositiveNegative};
}

Intertwining intertwining_unitaries(const CMatrix& p, const ToleranceConfig& tol)
{
    require_idempotent(p, tol, "intertwining_unitaries");
    const Eigen::Index n = p.rows();
    Intertwining out{block_form(p, tol), block_form(identity(n) - p, tol), {}, {}, {}, 0.0};
    const Eigen::Index r = out.form_p.rank(), m = n - r;
    if (out.form_q.rank() != m)
        throw Error(ErrorCode::DegenerateBlock,
                    "rank(P) + rank(I - P) = " + std::to_string(r + out.form_q.rank()) + " != n");

    // Rows: R(I-P) (m) then R(I-P)^perp (r). Columns: R(P) (r) then R(P)^perp (m).
    out.u_tilde = out.form_q.unitary().adjoint() * out.form_p.unitary();
    const CMatrix u21 = out.u_tilde.bottomLeftCorner(r, r);
    const CMatrix u12 = out.u_tilde.topRightCorner(m, m);

    auto require_invertible = [&tol](const CMatrix& block, const char* name) {
        if (block.size() == 0) return;
        const RVector sigma = fundamental_subspaces(block, tol).singular_values;
        const double smallest = sigma(sigma.size() - 1);
        if (smallest <= tol.rank_tol)
            throw Error(ErrorCode::DegenerateBlock,
                        std::string(name) + " is numerically singular, sigma_min " + std::to_string(smallest));
    };
    require_invertible(u21, "U21");
    require_invertible(u12, "U12");

    const CMatrix u = polar(u21, tol).v;  // R(P) -> R(I-P)^perp
    const CMatrix v = polar(u12, tol).v;  // R(P)^perp -> R(I-P)
    out.u1 = v;
    out.v1 = u.adjoint();
    out.residual = (out.form_q.p1 - out.u1 * out.form_p.p1.adjoint() * out.v1).norm();
    return out;
}

Similarity adjoint_similarity(const CMatrix& p, const ToleranceConfig& tol)
{
    const Intertwining it = intertwining_unitaries(p, tol);
    const Eigen::Index n = p.rows(), r = it.form_p.rank(), m = n - r;

    // R(P) + R(P)^perp -> R(I-P) + R(I-P)^perp
    CMatrix block = CMatrix::Zero(n, n);
    block.topRightCorner(m, m) = -it.u1;
    block.bottomLeftCorner(r, r) = it.v1.adjoint();
    const CMatrix u = it.form_q.unitary() * block * it.form_p.unitary().adjoint();

    return {u, (u.adjoint() * p.adjoint() * u - p).norm(), 0.0};
}

CMatrix shifted_sum(const CMatrix& p, const ToleranceConfig& tol)
{
    const Eigen::Index n = p.rows();
    return p + p.adjoint() + 2.0 * (identity(n) - range_projection(p, tol));
}

namespace {

double sorted_spectrum_gap(const CMatrix& a, const CMatrix& b, const ToleranceConfig& tol)
{
    const RVector ea = hermitian_eig(a, tol).values;
    const RVector eb = hermitian_eig(b, tol).values;
    if (ea.size() == 0) return 0.0;
    return (ea - eb).cwiseAbs().maxCoeff();
}

}  // namespace

Similarity complement_equivalence(const CMatrix& p, const ToleranceConfig& tol)
{
    const Intertwining it = intertwining_unitaries(p, tol);
    const Eigen::Index n = p.rows(), r = it.form_p.rank(), m = n - r;

    // R(I-P) + R(I-P)^perp -> R(P) + R(P)^perp
    CMatrix block = CMatrix::Zero(n, n);
    block.topRightCorner(r, r) = it.v1;
    block.bottomLeftCorner(m, m) = it.u1.adjoint();
    const CMatrix u = it.form_p.unitary() * block * it.form_q.unitary().adjoint();

    const CMatrix lhs = shifted_sum(p, tol);
    const CMatrix rhs = shifted_sum(identity(n) - p, tol);
    return {u, (u.adjoint() * lhs * u - rhs).norm(), sorted_spectrum_gap(lhs, rhs, tol)};
}

Report complement_projection_identities(const CMatrix& p, const ToleranceConfig& tol)
{
    require_idempotent(p, tol, "complement_projection_identities");
    const Eigen::Index n = p.rows();
    const CMatrix id = identity(n);
    const CMatrix q = id - p;

    const SpectralParts sum = spectral_parts(p + p.adjoint(), tol);
    const SpectralParts comp = spectral_parts(q + q.adjoint(), tol);
    const CMatrix ker_diff = kernel_projection(p - p.adjoint(), tol);

    const BlockForm fp = block_form(p, tol);
    const BlockForm fq = block_form(q, tol);
    const CMatrix ker_p1_adj = fp.basis_range * kernel_projection(fp.p1.adjoint(), tol) * fp.basis_range.adjoint();
    const CMatrix ker_p1 = fp.basis_perp * kernel_projection(fp.p1, tol) * fp.basis_perp.adjoint();
    const CMatrix ker_q1 = fq.basis_perp * kernel_projection(fq.p1, tol) * fq.basis_perp.adjoint();
    const CMatrix ker_q1_adj = fq.basis_range * kernel_projection(fq.p1.adjoint(), tol) * fq.basis_range.adjoint();

    const double t = tol.residual_tol * tolerance_scale(p);
    Report rep;
    rep.config = tol;
    rep.subject = {n, fp.rank(), matrix_hash(p), std::nullopt, {}};
    rep.add(CheckResult::residual_check("positive_part_of_complement", refs::kTheorem12i,
                                        (comp.p_plus - sum.p_minus - sum.p_ker).norm(), t));
    rep.add(CheckResult::residual_check("corner_cokernels_match", refs::kTheorem12ii, (ker_p1_adj - ker_q1).norm(), t));
    rep.add(CheckResult::residual_check("corner_kernels_match", refs::kTheorem12ii, (ker_p1 - ker_q1_adj).norm(), t));
    rep.add(CheckResult::residual_check("negative_part_of_complement", refs::kTheorem12iii,
                                        (comp.p_minus + comp.p_ker - sum.p_plus).norm(), t));
    rep.add(CheckResult::residual_check("complement_max_identity", refs::kComplementMaxIdentity,
                                        (comp.p_plus + comp.p_ker - sum.p_minus - ker_diff).norm(), t));
    rep.add(CheckResult::residual_check("complement_kernel_difference", refs::kComplementKernelDifference,
                                        (comp.p_ker - (ker_diff - sum.p_ker)).norm(), t));
    return rep;
}

}  // namespace kproj
