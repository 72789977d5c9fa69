#include "kproj/symfactory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kproj {

std::string_view to_string(SymmetryFamily family)
{
    switch (family) {
    case SymmetryFamily::JProjection: return "JProjection";
    case SymmetryFamily::JPositive: return "JPositive";
    case SymmetryFamily::JContractive: return "JContractive";
    }
    return "Unknown";
}

std::string_view to_string(ExtremalKind kind)
{
    switch (kind) {
    case ExtremalKind::PosMin: return "PosMin";
    case ExtremalKind::PosMax: return "PosMax";
    case ExtremalKind::ContrMin: return "ContrMin";
    case ExtremalKind::ContrMax: return "ContrMax";
    }
    return "Unknown";
}

std::string_view to_string(Definiteness d)
{
    switch (d) {
    case Definiteness::PositiveSemidefinite: return "psd";
    case Definiteness::NegativeSemidefinite: return "nsd";
    case Definiteness::Indefinite: return "indefinite";
    case Definiteness::Zero: return "zero";
    }
    return "unknown";
}

SymmetryFamily family_of(ExtremalKind kind)
{
    return (kind == ExtremalKind::PosMin || kind == ExtremalKind::PosMax) ? SymmetryFamily::JPositive
                                                                          : SymmetryFamily::JContractive;
}

namespace {

// Replaces the parameter a family does not use by the identity.
SymmetryParams resolve(const BlockForm& bf, SymmetryFamily family, const SymmetryParams& params)
{
    SymmetryParams out = params;
    if (family == SymmetryFamily::JPositive) out.j1 = identity(bf.rank());
    if (family == SymmetryFamily::JContractive) out.j2 = identity(bf.dim() - bf.rank());
    return out;
}

void require_param(const CMatrix& j, Eigen::Index size, const char* name, const ToleranceConfig& tol)
{
    if (j.rows() != size || j.cols() != size)
        throw Error(ErrorCode::NotSymmetryParam,
                    std::string(name) + " must be " + std::to_string(size) + "x" + std::to_string(size) +
                        ", got " + std::to_string(j.rows()) + "x" + std::to_string(j.cols()));
    if (!j.allFinite() || !is_symmetry(j, tol))
        throw Error(ErrorCode::NotSymmetryParam, std::string(name) + " is not a symmetry");
}

CMatrix inverse_sqrt_shifted_gram(const CMatrix& gram, const ToleranceConfig& tol)
{
    // I + X X* >= I
    const CMatrix shifted = identity(gram.rows()) + gram;
    return hermitian_function(shifted, [](double x) { return 1.0 / std::sqrt(std::max(x, 1.0)); }, tol);
}

}  // namespace

double constraint_residual(const BlockForm& bf, SymmetryFamily family, const SymmetryParams& params)
{
    const SymmetryParams prm = resolve(bf, family, params);
    const CMatrix& p1 = bf.p1;
    switch (family) {
    case SymmetryFamily::JProjection: return (prm.j1 * p1 + p1 * prm.j2).norm();
    case SymmetryFamily::JPositive: return (p1 + p1 * prm.j2).norm();
    case SymmetryFamily::JContractive: return (prm.j1 * p1 + p1).norm();
    }
    return 0.0;
}

CMatrix assemble_symmetry(const BlockForm& bf, SymmetryFamily family, const SymmetryParams& params,
                          const ToleranceConfig& tol)
{
    const Eigen::Index n = bf.dim(), r = bf.rank(), m = n - r;
    const SymmetryParams prm = resolve(bf, family, params);
    require_param(prm.j1, r, "J1", tol);
    require_param(prm.j2, m, "J2", tol);

    const CMatrix& p1 = bf.p1;
    const double res = constraint_residual(bf, family, prm);
    if (res > tol.residual_tol * tolerance_scale(p1))
        throw Error(ErrorCode::ConstraintViolated,
                    std::string(to_string(family)) + " constraint residual " + std::to_string(res));

    const CMatrix s1 = inverse_sqrt_shifted_gram(p1 * p1.adjoint(), tol);
    const CMatrix s2 = inverse_sqrt_shifted_gram(p1.adjoint() * p1, tol);

    CMatrix block(n, n);
    block.topLeftCorner(r, r) = prm.j1 * s1;
    block.topRightCorner(r, m) = prm.j1 * s1 * p1;
    block.bottomLeftCorner(m, r) = p1.adjoint() * s1 * prm.j1;
    block.bottomRightCorner(m, m) = prm.j2 * s2;
    return bf.to_ambient(block);
}

std::vector<SymmetryParams> sample_params(const BlockForm& bf, SymmetryFamily family, int count,
                                          std::uint64_t seed, const ToleranceConfig& tol)
{
    if (count < 1) throw Error(ErrorCode::InvalidArgument, "sample_params: count must be >= 1");

    // left_null = N(p1*) inside R(P), range = its complement R(p1);
    // kernel = N(p1) inside R(P)^perp, corange = its complement R(p1*).
    const SubspaceBases sb = fundamental_subspaces(bf.p1, tol);
    const CMatrix range_proj = sb.range * sb.range.adjoint();
    const CMatrix corange_proj = sb.corange * sb.corange.adjoint();

    Rng rng(seed);
    std::bernoulli_distribution coin(0.5);
    auto free_part = [&rng](const CMatrix& basis) -> CMatrix {
        const CMatrix s = random_symmetry(basis.cols(), rng);
        return basis * s * basis.adjoint();
    };

    std::vector<SymmetryParams> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        SymmetryParams prm;
        switch (family) {
        case SymmetryFamily::JContractive:
            prm.j1 = free_part(sb.left_null) - range_proj;
            break;
        case SymmetryFamily::JPositive:
            prm.j2 = free_part(sb.kernel) - corange_proj;
            break;
        case SymmetryFamily::JProjection: {
            const double eps = coin(rng) ? 1.0 : -1.0;
            prm.j1 = free_part(sb.left_null) + eps * range_proj;
            prm.j2 = free_part(sb.kernel) - eps * corange_proj;
            break;
        }
        }
        out.push_back(std::move(prm));
    }
    return out;
}

CMatrix extremal_symmetry(const CMatrix& p, ExtremalKind kind, const ToleranceConfig& tol)
{
    require_idempotent(p, tol, "extremal_symmetry");
    const Eigen::Index n = p.rows();
    const SpectralParts sp = spectral_parts(p + p.adjoint(), tol);
    const CMatrix id = identity(n);
    switch (kind) {
    case ExtremalKind::PosMin: return 2.0 * sp.p_plus - id;
    case ExtremalKind::PosMax: return 2.0 * sp.p_plus - id + 2.0 * sp.p_ker;
    case ExtremalKind::ContrMin: return 2.0 * sp.p_minus - id + 2.0 * sp.p_ker;
    case ExtremalKind::ContrMax:
        return 2.0 * sp.p_minus - id + 2.0 * kernel_projection(p - p.adjoint(), tol);
    }
    return id;
}

SymmetryParams extremal_params(const BlockForm& bf, ExtremalKind kind, const ToleranceConfig& tol)
{
    const Eigen::Index r = bf.rank(), m = bf.dim() - r;
    const SubspaceBases sb = fundamental_subspaces(bf.p1, tol);
    SymmetryParams prm;
    switch (kind) {
    case ExtremalKind::PosMin:
        prm.j2 = -identity(m);
        break;
    case ExtremalKind::PosMax:
        prm.j2 = 2.0 * sb.kernel * sb.kernel.adjoint() - identity(m);
        break;
    case ExtremalKind::ContrMin:
        prm.j1 = -identity(r);
        break;
    case ExtremalKind::ContrMax:
        prm.j1 = 2.0 * sb.left_null * sb.left_null.adjoint() - identity(r);
        break;
    }
    return prm;
}

CMatrix extremal_symmetry_from_blocks(const CMatrix& p, ExtremalKind kind, const ToleranceConfig& tol)
{
    const BlockForm bf = block_form(p, tol);
    return assemble_symmetry(bf, family_of(kind), extremal_params(bf, kind, tol), tol);
}

CMatrix shift_sign(const CMatrix& p, const ToleranceConfig& tol)
{
    require_square(p, "shift_sign");
    const CMatrix shifted = p + p.adjoint() - identity(p.rows());
    const HermitianEig eig = hermitian_eig(shifted, tol);
    const Eigen::Index n = eig.values.size();
    if (n == 0) return CMatrix(0, 0);

    double gap = std::abs(eig.values(0));
    double scale = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        gap = std::min(gap, std::abs(eig.values(i)));
        scale = std::max(scale, std::abs(eig.values(i)));
    }
    if (gap <= tol.rank_tol * scale)
        throw Error(ErrorCode::SingularShift,
                    "|P + P* - I| is numerically singular, smallest eigenvalue " + std::to_string(gap));

    RVector sign(n);
    for (Eigen::Index i = 0; i < n; ++i) sign(i) = eig.values(i) > 0.0 ? 1.0 : -1.0;
    return eig.vectors * sign.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

CMatrix sign_formula_symmetry(const CMatrix& p, const ToleranceConfig& tol)
{
    require_idempotent(p, tol, "sign_formula_symmetry");
    const CMatrix sign = shift_sign(p, tol);
    const CMatrix ker = spectral_parts(p + p.adjoint(), tol).p_ker;
    const CMatrix j = sign + 2.0 * ker;

    const double bound = tol.residual_tol * tolerance_scale(p);
    const double gap = (j - extremal_symmetry(p, ExtremalKind::PosMax, tol)).norm();
    if (gap > bound)
        throw Error(ErrorCode::InternalMismatch,
                    "sign formula differs from the spectral maximum by " + std::to_string(gap));
    const double on_kernel = (sign * ker + ker).norm();
    if (on_kernel > bound)
        throw Error(ErrorCode::InternalMismatch,
                    "sign part is not -I on N(P + P*), residual " + std::to_string(on_kernel));
    return j;
}

Witnesses nonexistence_witnesses(const CMatrix& p, const ToleranceConfig& tol)
{
    const BlockForm bf = block_form(p, tol);
    const Eigen::Index r = bf.rank(), m = bf.dim() - r;

    Witnesses w;
    w.j_a = assemble_symmetry(bf, SymmetryFamily::JProjection, {-identity(r), identity(m)}, tol);
    w.j_b = assemble_symmetry(bf, SymmetryFamily::JProjection, {identity(r), -identity(m)}, tol);

    const CMatrix diff = w.j_a - w.j_b;
    DominanceReport& d = w.dominance;
    if (diff.size() > 0) {
        const HermitianEig eig = hermitian_eig(diff, tol);
        d.max_eigenvalue = eig.values(0);
        d.min_eigenvalue = eig.values(eig.values.size() - 1);
    }
    const double band = tol.psd_tol * tolerance_scale(diff);
    const bool psd = d.min_eigenvalue >= -band;
    const bool nsd = d.max_eigenvalue <= band;
    if (psd && nsd)
        d.kind = Definiteness::Zero;
    else if (psd)
        d.kind = Definiteness::PositiveSemidefinite;
    else if (nsd)
        d.kind = Definiteness::NegativeSemidefinite;
    else
        d.kind = Definiteness::Indefinite;

    d.corner_norm = spectral_norm(bf.p1);
    d.corner_nonzero = d.corner_norm > tol.rank_tol;
    return w;
}

}  // namespace kproj
