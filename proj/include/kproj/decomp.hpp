#pragma once

// Structural decompositions built on the block form of an idempotent:
// the negative spectral projection of [[I, B], [B*, 0]], recovery of block
// parameters from a J-projection symmetry, the contractive/expansive and
// positive/negative splittings of a J-projection, and the unitaries that
// intertwine the block forms of P and I - P.

#include <string_view>

#include "kproj/report.hpp"
#include "kproj/symfactory.hpp"

namespace kproj {

/// Negative spectral projection of S = [[I, B], [B*, 0]] (B is m x k) in
/// closed form:
///   [[ (I - T^{-1})/2,   -T^{-1} B            ],
///    [ -B* T^{-1},        V (I + T^{-1}) V*/2 ]],
/// with T = (I + 4 B B*)^{1/2} and B* = V |B*| the polar decomposition.
/// The result is checked against the eigendecomposition of S; a disagreement
/// beyond residual_tol throws InternalMismatch.
CMatrix negative_part_projection_formula(const CMatrix& b, const ToleranceConfig& tol = {});

/// Same closed form without the spectral cross-check.
CMatrix negative_part_projection_closed_form(const CMatrix& b, const ToleranceConfig& tol = {});

/// [[I, B], [B*, 0]]
CMatrix bordered_matrix(const CMatrix& b);

/// Throws NotSymmetry / NotJProjection unless j is a symmetry with JPJ = P*.
void require_j_projection(const CMatrix& p, const CMatrix& j, const ToleranceConfig& tol);

/// Recovers (J1, J2) from a symmetry with JPJ = P* by normalizing its diagonal
/// blocks, J_k = J_kk (J_kk^2)^{-1/2}. The result is verified by reassembly.
SymmetryParams extract_params(const CMatrix& p, const CMatrix& j, const ToleranceConfig& tol = {});

enum class SplitKind { ContractiveExpansive, PositiveNegative };

std::string_view to_string(SplitKind kind);

/// ContractiveExpansive: e1 J-contractive, e2 J-expansive, P = e1 e2.
/// PositiveNegative: e1 = Q J-positive, e2 = R J-negative, P = Q + R.
struct SplitResult {
    CMatrix e1;
    CMatrix e2;
    SplitKind kind = SplitKind::ContractiveExpansive;
};

SplitResult contractive_expansive_split(const CMatrix& p, const CMatrix& j, const ToleranceConfig& tol = {});

/// Q = I - E1', R = I - E2' where (E1', E2') splits I - P.
SplitResult positive_negative_split(const CMatrix& p, const CMatrix& j, const ToleranceConfig& tol = {});

/// Unitaries u1: R(P)^perp -> R(I-P) and v1: R(I-P)^perp -> R(P) with
/// q1 = u1 p1* v1, where p1 and q1 are the corner blocks of P and I - P.
struct Intertwining {
    BlockForm form_p;      // block form of P
    BlockForm form_q;      // block form of I - P
    CMatrix u_tilde;       // form_q.unitary()* form_p.unitary()
    CMatrix u1;
    CMatrix v1;
    double residual = 0.0; // |q1 - u1 p1* v1|_F
};

/// Throws DegenerateBlock when either off-diagonal block of u_tilde is
/// numerically singular, which can only come from a rank misclassification.
Intertwining intertwining_unitaries(const CMatrix& p, const ToleranceConfig& tol = {});

struct Similarity {
    CMatrix u;              // ambient unitary
    double residual = 0.0;
    double spectrum_gap = 0.0;  // max |sorted eigenvalue difference|, when meaningful
};

/// U with U* P* U = P, residual |U* P* U - P|_F.
Similarity adjoint_similarity(const CMatrix& p, const ToleranceConfig& tol = {});

/// P + P* + 2(I - P_{R(P)})
CMatrix shifted_sum(const CMatrix& p, const ToleranceConfig& tol = {});

/// U~ with U~* (P + P* + 2 P_P^perp) U~ = 2I - P - P* + 2 P_{I-P}^perp.
Similarity complement_equivalence(const CMatrix& p, const ToleranceConfig& tol = {});

/// Relations between the spectral projections of P + P* and 2I - P - P*,
/// and between the kernels of the corner blocks of P and I - P. One check
/// per identity, residuals in the Frobenius norm.
Report complement_projection_identities(const CMatrix& p, const ToleranceConfig& tol = {});

}  // namespace kproj
