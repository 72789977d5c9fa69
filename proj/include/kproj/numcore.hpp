#pragma once

// Dense complex kernels shared by every other module: Hermitian spectral
// calculus, range/kernel projections, polar decomposition and the Loewner
// order. Every routine is a pure function of its arguments.

#include <complex>
#include <functional>
#include <string_view>

#include <Eigen/Dense>

#include "kproj/error.hpp"

namespace kproj {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Numerical policy threaded through every operation.
///
/// Each tolerance is relative: it is multiplied by the scale of the input,
/// max(1, spectral norm), before comparison.
struct ToleranceConfig {
    double rank_tol = 1e-10;      ///< |lambda| or sigma at or below this count as zero
    double psd_tol = 1e-9;        ///< A >= 0 accepted when lambda_min(A) >= -psd_tol
    double residual_tol = 1e-9;   ///< Frobenius residual bound for identities

    /// Throws Error(InvalidArgument) when any tolerance is negative or NaN.
    void validate() const;
};

double spectral_norm(const CMatrix& a);

/// max(1, spectral norm of a)
double tolerance_scale(const CMatrix& a);

CMatrix identity(Eigen::Index n);

/// Throws Error(NonFinite) naming `where` when any entry is NaN or Inf.
void require_finite(const CMatrix& a, std::string_view where);

/// Throws Error(DimensionMismatch) when a is not square.
void require_square(const CMatrix& a, std::string_view where);

struct HermitianEig {
    RVector values;   // descending
    CMatrix vectors;  // unitary, column k pairs with values(k)
};

/// Eigendecomposition of the Hermitian part (a + a*)/2. Rejects inputs whose
/// anti-Hermitian part exceeds residual_tol * scale.
HermitianEig hermitian_eig(const CMatrix& a, const ToleranceConfig& tol = {});

/// Spectral calculus f(a) = Q diag(f(lambda)) Q* for Hermitian a.
CMatrix hermitian_function(const CMatrix& a, const std::function<double(double)>& f,
                           const ToleranceConfig& tol = {});

/// A = a_plus - a_minus with the three spectral projections of A.
struct SpectralParts {
    CMatrix a_plus;
    CMatrix a_minus;
    CMatrix p_plus;   // onto R(A+)
    CMatrix p_minus;  // onto R(A-)
    CMatrix p_ker;    // onto N(A)
};

/// Eigenvalues inside the band (-rank_tol*scale, rank_tol*scale) go to the
/// kernel bucket, so the three projections always sum to I.
SpectralParts spectral_parts(const CMatrix& a, const ToleranceConfig& tol = {});

/// Orthogonal projection onto R(t), from left singular vectors with
/// sigma > rank_tol * scale. Returns a rows x rows matrix.
CMatrix range_projection(const CMatrix& t, const ToleranceConfig& tol = {});

/// Orthogonal projection onto N(t) (cols x cols), i.e. I - P_{R(t*)}.
CMatrix kernel_projection(const CMatrix& t, const ToleranceConfig& tol = {});

/// Orthonormal bases of the four fundamental subspaces of t, read off one
/// full SVD. Column phases are normalized so the largest-magnitude entry of
/// every basis vector is real and positive.
struct SubspaceBases {
    CMatrix range;       // R(t),   rows x k
    CMatrix left_null;   // N(t*),  rows x (rows - k)
    CMatrix corange;     // R(t*),  cols x k
    CMatrix kernel;      // N(t),   cols x (cols - k)
    RVector singular_values;  // all min(rows, cols) values, descending
};

SubspaceBases fundamental_subspaces(const CMatrix& t, const ToleranceConfig& tol = {});

/// t = v * modulus with modulus = (t*t)^{1/2} and N(v) = N(t).
struct PolarParts {
    CMatrix v;
    CMatrix modulus;
};

PolarParts polar(const CMatrix& t, const ToleranceConfig& tol = {});

struct LoewnerVerdict {
    bool geq = false;
    double margin = 0.0;  // lambda_min(a - b)
};

/// a >= b in the Loewner order, accepted when lambda_min(a - b) >= -psd_tol * scale
/// with scale = max(1, |a|, |b|).
LoewnerVerdict loewner_geq(const CMatrix& a, const CMatrix& b, const ToleranceConfig& tol = {});

/// Smallest eigenvalue of Hermitian a; +inf for the empty matrix.
double lambda_min(const CMatrix& a, const ToleranceConfig& tol = {});

/// Largest eigenvalue of Hermitian a; -inf for the empty matrix.
double lambda_max(const CMatrix& a, const ToleranceConfig& tol = {});

/// j = j* = j^{-1} within residual_tol * scale.
bool is_symmetry(const CMatrix& j, const ToleranceConfig& tol = {});

/// Multiplies each column by a unit phase so its largest-magnitude entry is
/// real and positive. Zero columns are left alone.
void normalize_column_phases(CMatrix& basis);

}  // namespace kproj
