#pragma once

// Idempotent matrices in their canonical 2x2 block form over R(P) + R(P)^perp,
// kernel projections of P + P* and P - P*, and seeded random generators.

#include <cstdint>
#include <random>

#include "kproj/numcore.hpp"

namespace kproj {

/// P = W [[I, p1], [0, 0]] W* with W = [basis_range | basis_perp] unitary.
struct BlockForm {
    CMatrix basis_range;  // n x r, orthonormal columns spanning R(P)
    CMatrix basis_perp;   // n x (n - r), orthonormal columns spanning R(P)^perp
    CMatrix p1;           // r x (n - r) corner block

    Eigen::Index dim() const { return basis_range.rows(); }
    Eigen::Index rank() const { return basis_range.cols(); }

    /// [basis_range | basis_perp]
    CMatrix unitary() const;

    /// Maps a block matrix given in the (R(P), R(P)^perp) coordinates back to
    /// the ambient basis.
    CMatrix to_ambient(const CMatrix& block) const;

    /// Inverse of to_ambient.
    CMatrix to_block(const CMatrix& ambient) const;

    /// [[I, p1], [0, 0]] mapped to the ambient basis.
    CMatrix reassemble() const;
};

/// |p^2 - p|_F <= residual_tol * scale. Throws DimensionMismatch for non-square p.
bool validate_idempotent(const CMatrix& p, const ToleranceConfig& tol = {});

/// Throws Error(NotIdempotent) unless validate_idempotent(p, tol).
void require_idempotent(const CMatrix& p, const ToleranceConfig& tol, std::string_view where);

BlockForm block_form(const CMatrix& p, const ToleranceConfig& tol = {});

/// Orthogonal projections onto N(P + P*) and N(P - P*), each computed from
/// the ambient matrix and from the corner block.
struct KernelProjectionRoutes {
    CMatrix sum_direct;
    CMatrix sum_block;   // 0 + N(p1)
    CMatrix diff_direct;
    CMatrix diff_block;  // N(p1*) + N(p1)
};

KernelProjectionRoutes kernel_projection_routes(const CMatrix& p, const ToleranceConfig& tol = {});

struct KernelProjections {
    CMatrix p_ker_sum;   // onto N(P + P*)
    CMatrix p_ker_diff;  // onto N(P - P*)
};

/// Throws Error(InternalMismatch) when the two routes disagree beyond
/// residual_tol, which points at a rank misclassification.
KernelProjections kernel_projections(const CMatrix& p, const ToleranceConfig& tol = {});

// ---------------------------------------------------------------------------
// Generators. All take an explicit seed and are deterministic in it.

using Rng = std::mt19937_64;

/// Haar-distributed n x n unitary (QR of a complex Ginibre matrix with the
/// phases of R's diagonal divided out).
CMatrix haar_unitary(Eigen::Index n, Rng& rng);

/// r x c block with independent entries uniform in the disc of radius `scale`.
CMatrix random_corner(Eigen::Index r, Eigen::Index c, double scale, Rng& rng);

/// Largest spectral norm a generated corner block may have, keeping |P| <= ~10.
inline constexpr double kMaxCornerNorm = 9.9;

/// W [[I_r, B], [0, 0]] W* for Haar W and a random corner B with entries of
/// magnitude <= corner_scale. The trailing `zero_corner_cols` columns of B are
/// forced to zero, which makes B rank deficient.
CMatrix random_idempotent(Eigen::Index n, Eigen::Index r, double corner_scale, std::uint64_t seed,
                          Eigen::Index zero_corner_cols = 0);

/// Random k x k symmetry Q diag(+-1) Q* acting on the span of `basis`
/// (n x k with orthonormal columns).
CMatrix random_symmetry_on(const CMatrix& basis, std::uint64_t seed, const ToleranceConfig& tol = {});

/// Random symmetry Q diag(+-1) Q* of size k drawn from an existing generator.
CMatrix random_symmetry(Eigen::Index k, Rng& rng);

}  // namespace kproj
