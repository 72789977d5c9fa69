#pragma once

// Symmetries J adapted to an idempotent P: the parameterized families
//   JProjection   JPJ = P*       params (J1 on R(P), J2 on R(P)^perp), J1 p1 + p1 J2 = 0
//   JPositive     JP >= 0        param J2,                              p1 = -p1 J2
//   JContractive  P*JP <= J      param J1,                              J1 p1 + p1 = 0
// their closed-form Loewner extremes, and samplers over the admissible sets.

#include <cstdint>
#include <string_view>
#include <vector>

#include "kproj/projform.hpp"

namespace kproj {

enum class SymmetryFamily { JProjection, JPositive, JContractive };

enum class ExtremalKind { PosMin, PosMax, ContrMin, ContrMax };

std::string_view to_string(SymmetryFamily family);
std::string_view to_string(ExtremalKind kind);

/// Block parameters of a family member. A family that does not use one of
/// the two (JPositive ignores j1, JContractive ignores j2) leaves it empty and
/// the identity is implied.
struct SymmetryParams {
    CMatrix j1;  // r x r
    CMatrix j2;  // (n - r) x (n - r)
};

/// Residual of the family's linear constraint on the corner block:
/// |J1 p1 + p1 J2|, |p1 + p1 J2| or |J1 p1 + p1| (Frobenius).
double constraint_residual(const BlockForm& bf, SymmetryFamily family, const SymmetryParams& params);

/// Builds J in the ambient basis from the block formula
///   [[ J1 S1,        J1 S1 p1 ],
///    [ p1* S1 J1,    J2 S2    ]],  S1 = (I + p1 p1*)^{-1/2}, S2 = (I + p1* p1)^{-1/2}.
/// Throws NotSymmetryParam for a malformed parameter and ConstraintViolated
/// when the family constraint fails beyond residual_tol.
CMatrix assemble_symmetry(const BlockForm& bf, SymmetryFamily family, const SymmetryParams& params,
                          const ToleranceConfig& tol = {});

/// Draws `count` admissible parameters. J1 (resp. J2) is a random symmetry
/// on N(p1*) (resp. N(p1)) extended by a fixed sign on the complement, which
/// is the complete admissible set for JContractive and JPositive and the
/// block-diagonal part of it for JProjection.
std::vector<SymmetryParams> sample_params(const BlockForm& bf, SymmetryFamily family, int count,
                                          std::uint64_t seed, const ToleranceConfig& tol = {});

/// Closed-form extremal symmetry from the spectral projections of A = P + P*:
///   PosMin   = 2 P_{A+} - I
///   PosMax   = 2 P_{A+} - I + 2 P_{N(A)}
///   ContrMin = 2 P_{A-} - I + 2 P_{N(A)}
///   ContrMax = 2 P_{A-} - I + 2 P_{N(P - P*)}
CMatrix extremal_symmetry(const CMatrix& p, ExtremalKind kind, const ToleranceConfig& tol = {});

/// Block parameters of the extremal member of each family; used with
/// assemble_symmetry as an independent route to extremal_symmetry.
SymmetryParams extremal_params(const BlockForm& bf, ExtremalKind kind, const ToleranceConfig& tol = {});

CMatrix extremal_symmetry_from_blocks(const CMatrix& p, ExtremalKind kind, const ToleranceConfig& tol = {});

/// Family whose extremes `kind` bounds.
SymmetryFamily family_of(ExtremalKind kind);

/// (P + P* - I) |P + P* - I|^{-1} + 2 P_{N(P + P*)}, the maximal symmetry
/// with JP >= 0 written through the matrix sign function.
///
/// Throws SingularShift when |P + P* - I| has an eigenvalue at or below
/// rank_tol * scale, and InternalMismatch when the result disagrees with
/// extremal_symmetry(p, PosMax) or the sign part fails to act as -I on
/// N(P + P*).
CMatrix sign_formula_symmetry(const CMatrix& p, const ToleranceConfig& tol = {});

/// (P + P* - I) |P + P* - I|^{-1}, throwing SingularShift as above.
CMatrix shift_sign(const CMatrix& p, const ToleranceConfig& tol = {});

enum class Definiteness { PositiveSemidefinite, NegativeSemidefinite, Indefinite, Zero };

std::string_view to_string(Definiteness d);

struct DominanceReport {
    Definiteness kind = Definiteness::Zero;
    double min_eigenvalue = 0.0;  // of j_a - j_b
    double max_eigenvalue = 0.0;
    double corner_norm = 0.0;     // spectral norm of p1
    bool corner_nonzero = false;  // corner_norm > rank_tol; then kind must be Indefinite
};

struct Witnesses {
    CMatrix j_a;  // params (-I, +I)
    CMatrix j_b;  // params (+I, -I)
    DominanceReport dominance;
};

/// Two symmetries with JPJ = P* that no single J-projection symmetry can
/// dominate unless P is orthogonal.
Witnesses nonexistence_witnesses(const CMatrix& p, const ToleranceConfig& tol = {});

}  // namespace kproj
