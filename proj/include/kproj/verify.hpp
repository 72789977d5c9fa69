#pragma once

// Classification of (P, J) pairs, the P*JP <= J  <=>  J(I - P) >= 0
// biconditional, Loewner extremality probes over sampled admissible
// symmetries, and the aggregate certificate report.

#include <cstdint>
#include <optional>

#include "kproj/decomp.hpp"
#include "kproj/report.hpp"

namespace kproj {

/// a >= 0 in the sense used for JP >= 0: a must be Hermitian (within
/// residual_tol) and its smallest eigenvalue above -psd_tol. No silent
/// symmetrization: a non-Hermitian a fails regardless of its spectrum.
struct PsdTest {
    bool holds = false;
    double hermitian_residual = 0.0;  // |a - a*|_F
    double margin = 0.0;              // lambda_min((a + a*)/2)
};

PsdTest psd_test(const CMatrix& a, const ToleranceConfig& tol = {});

/// P*JP <= J (or >= J when `expansive`). The quadratic form of J - P*JP
/// vanishes on R(P), so a semidefinite J - P*JP must annihilate R(P); the
/// test asks for both lambda_min >= -psd_tol and |(J - P*JP) P|_F within
/// residual_tol. The eigenvalue margin alone only sees a coupling of size e
/// between R(P) and its complement at order e^2.
struct ContractivityTest {
    bool holds = false;
    double margin = 0.0;    // lambda_min(+-(J - P*JP))
    double coupling = 0.0;  // |(J - P*JP) P|_F
};

ContractivityTest contractivity_test(const CMatrix& p, const CMatrix& j, bool expansive = false,
                                     const ToleranceConfig& tol = {});

struct Classification {
    bool j_projection = false;
    bool j_positive = false;
    bool j_negative = false;
    bool j_contractive = false;
    bool j_expansive = false;

    double projection_residual = 0.0;  // |JPJ - P*|_F
    double positive_margin = 0.0;      // lambda_min of JP
    double negative_margin = 0.0;      // lambda_min of -JP
    double contractive_margin = 0.0;   // lambda_min(J - P*JP)
    double expansive_margin = 0.0;     // lambda_min(P*JP - J)
};

/// Throws NotIdempotent / NotSymmetry on bad inputs.
Classification classify(const CMatrix& p, const CMatrix& j, const ToleranceConfig& tol = {});

/// Passes when the verdicts of P*JP <= J and J(I - P) >= 0 agree, whether
/// both hold or both fail.
CheckResult lemma11_check(const CMatrix& p, const CMatrix& j, const ToleranceConfig& tol = {});

/// Samples admissible symmetries of `family` (JPositive or JContractive) and
/// records lambda_min(J - J_min) and lambda_min(J_max - J) for each draw,
/// plus the admissibility of both closed-form extremes.
Report extremality_probe(const CMatrix& p, SymmetryFamily family, int samples, std::uint64_t seed,
                         const ToleranceConfig& tol = {});

/// Algebraic identities and J-classifications of a split of P.
Report split_report(const CMatrix& p, const CMatrix& j, const SplitResult& split,
                    const ToleranceConfig& tol = {});

/// Runs every check available for P (and J when given) in a fixed order.
/// Failures and library errors become failing checks; J-dependent checks
/// are recorded as skipped, with the reason, when J is absent or JPJ != P*.
Report full_report(const CMatrix& p, const std::optional<CMatrix>& j, const ToleranceConfig& tol = {},
                   int samples = 100, std::uint64_t seed = 0);

}  // namespace kproj
