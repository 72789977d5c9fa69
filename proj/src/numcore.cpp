#include "kproj/numcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace kproj {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotIdempotent: return "NotIdempotent";
    case ErrorCode::NotSymmetry: return "NotSymmetry";
    case ErrorCode::NotJProjection: return "NotJProjection";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::NotSymmetryParam: return "NotSymmetryParam";
    case ErrorCode::ConstraintViolated: return "ConstraintViolated";
    case ErrorCode::BadRank: return "BadRank";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SingularShift: return "SingularShift";
    case ErrorCode::SingularBlock: return "SingularBlock";
    case ErrorCode::DegenerateBlock: return "DegenerateBlock";
    case ErrorCode::InternalMismatch: return "InternalMismatch";
    }
    return "Unknown";
}

void ToleranceConfig::validate() const
{
    // NaN fails too.
    if (!(rank_tol >= 0.0) || !(psd_tol >= 0.0) || !(residual_tol >= 0.0))
        throw Error(ErrorCode::InvalidArgument, "tolerances must be nonnegative");
}

namespace {

using Svd = Eigen::JacobiSVD<CMatrix>;

Eigen::Index count_above(const RVector& sigma, double cutoff)
{
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma(i) > cutoff) ++k;
    return k;
}

CMatrix outer_projection(const CMatrix& basis)
{
    return basis * basis.adjoint();
}

}  // namespace

double spectral_norm(const CMatrix& a)
{
    if (a.size() == 0) return 0.0;
    Svd svd(a);
    return svd.singularValues()(0);
}

double tolerance_scale(const CMatrix& a)
{
    return std::max(1.0, spectral_norm(a));
}

CMatrix identity(Eigen::Index n)
{
    return CMatrix::Identity(n, n);
}

void require_finite(const CMatrix& a, std::string_view where)
{
    if (!a.allFinite())
        throw Error(ErrorCode::NonFinite, std::string(where) + ": matrix has NaN or Inf entries");
}

void require_square(const CMatrix& a, std::string_view where)
{
    if (a.rows() != a.cols())
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(where) + ": expected a square matrix, got " +
                        std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

HermitianEig hermitian_eig(const CMatrix& a, const ToleranceConfig& tol)
{
    require_square(a, "hermitian_eig");
    require_finite(a, "hermitian_eig");
    const Eigen::Index n = a.rows();
    if (n == 0) return {RVector(0), CMatrix(0, 0)};

    const double scale = tolerance_scale(a);
    const double skew = (a - a.adjoint()).norm();
    if (skew > tol.residual_tol * scale)
        throw Error(ErrorCode::NotHermitian,
                    "|a - a*|_F = " + std::to_string(skew) + " exceeds tolerance");

    const CMatrix h = (a + a.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    if (es.info() != Eigen::Success)
        throw Error(ErrorCode::InternalMismatch, "hermitian_eig: eigensolver did not converge");

    // Eigen returns ascending order.
    HermitianEig out{es.eigenvalues().reverse(), es.eigenvectors().rowwise().reverse()};
    return out;
}

CMatrix hermitian_function(const CMatrix& a, const std::function<double(double)>& f,
                           const ToleranceConfig& tol)
{
    const HermitianEig eig = hermitian_eig(a, tol);
    RVector fv(eig.values.size());
    for (Eigen::Index i = 0; i < fv.size(); ++i) fv(i) = f(eig.values(i));
    return eig.vectors * fv.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

SpectralParts spectral_parts(const CMatrix& a, const ToleranceConfig& tol)
{
    const HermitianEig eig = hermitian_eig(a, tol);
    const Eigen::Index n = eig.values.size();

    double scale = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) scale = std::max(scale, std::abs(eig.values(i)));
    const double cutoff = tol.rank_tol * scale;

    RVector plus = RVector::Zero(n), minus = RVector::Zero(n);
    RVector ind_plus = RVector::Zero(n), ind_minus = RVector::Zero(n), ind_ker = RVector::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double lam = eig.values(i);
        if (lam >= cutoff && lam > 0.0) {
            plus(i) = lam;
            ind_plus(i) = 1.0;
        } else if (lam <= -cutoff && lam < 0.0) {
            minus(i) = -lam;
            ind_minus(i) = 1.0;
        } else {
            ind_ker(i) = 1.0;
        }
    }

    const CMatrix& q = eig.vectors;
    auto build = [&q](const RVector& d) -> CMatrix {
        return q * d.cast<Complex>().asDiagonal() * q.adjoint();
    };
    return {build(plus), build(minus), build(ind_plus), build(ind_minus), build(ind_ker)};
}

SubspaceBases fundamental_subspaces(const CMatrix& t, const ToleranceConfig& tol)
{
    require_finite(t, "fundamental_subspaces");
    const Eigen::Index m = t.rows(), n = t.cols();
    if (m == 0 || n == 0)
        return {CMatrix(m, 0), identity(m), CMatrix(n, 0), identity(n), RVector(0)};

    Svd svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RVector& sigma = svd.singularValues();
    const double cutoff = tol.rank_tol * std::max(1.0, sigma(0));
    const Eigen::Index k = count_above(sigma, cutoff);

    SubspaceBases out{svd.matrixU().leftCols(k), svd.matrixU().rightCols(m - k),
                      svd.matrixV().leftCols(k), svd.matrixV().rightCols(n - k), sigma};
    normalize_column_phases(out.range);
    normalize_column_phases(out.left_null);
    normalize_column_phases(out.corange);
    normalize_column_phases(out.kernel);
    return out;
}

CMatrix range_projection(const CMatrix& t, const ToleranceConfig& tol)
{
    require_finite(t, "range_projection");
    const Eigen::Index m = t.rows(), n = t.cols();
    if (m == 0 || n == 0) return CMatrix::Zero(m, m);

    Svd svd(t, Eigen::ComputeThinU);
    const RVector& sigma = svd.singularValues();
    const double cutoff = tol.rank_tol * std::max(1.0, sigma(0));
    const Eigen::Index k = count_above(sigma, cutoff);
    return outer_projection(svd.matrixU().leftCols(k));
}

CMatrix kernel_projection(const CMatrix& t, const ToleranceConfig& tol)
{
    return identity(t.cols()) - range_projection(t.adjoint(), tol);
}

PolarParts polar(const CMatrix& t, const ToleranceConfig& tol)
{
    require_finite(t, "polar");
    const Eigen::Index m = t.rows(), n = t.cols();
    if (m == 0 || n == 0) return {CMatrix::Zero(m, n), CMatrix::Zero(n, n)};

    Svd svd(t, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVector& sigma = svd.singularValues();
    const double cutoff = tol.rank_tol * std::max(1.0, sigma(0));
    const Eigen::Index k = count_above(sigma, cutoff);

    const CMatrix u = svd.matrixU().leftCols(k);
    const CMatrix w = svd.matrixV().leftCols(k);
    const RVector s = sigma.head(k);
    return {u * w.adjoint(), w * s.cast<Complex>().asDiagonal() * w.adjoint()};
}

double lambda_min(const CMatrix& a, const ToleranceConfig& tol)
{
    const HermitianEig eig = hermitian_eig(a, tol);
    if (eig.values.size() == 0) return std::numeric_limits<double>::infinity();
    return eig.values(eig.values.size() - 1);
}

double lambda_max(const CMatrix& a, const ToleranceConfig& tol)
{
    const HermitianEig eig = hermitian_eig(a, tol);
    if (eig.values.size() == 0) return -std::numeric_limits<double>::infinity();
    return eig.values(0);
}

LoewnerVerdict loewner_geq(const CMatrix& a, const CMatrix& b, const ToleranceConfig& tol)
{
    require_square(a, "loewner_geq");
    require_square(b, "loewner_geq");
    if (a.rows() != b.rows())
        throw Error(ErrorCode::DimensionMismatch, "loewner_geq: operands differ in size");
    // Validate each side separately so a skew part cannot cancel in a - b.
    hermitian_eig(a, tol);
    hermitian_eig(b, tol);

    const double scale = std::max(tolerance_scale(a), tolerance_scale(b));
    const double margin = lambda_min(a - b, tol);
    if (a.rows() == 0) return {true, 0.0};
    return {margin >= -tol.psd_tol * scale, margin};
}

bool is_symmetry(const CMatrix& j, const ToleranceConfig& tol)
{
    require_square(j, "is_symmetry");
    require_finite(j, "is_symmetry");
    const double bound = tol.residual_tol * tolerance_scale(j);
    if ((j - j.adjoint()).norm() > bound) return false;
    return (j * j - identity(j.rows())).norm() <= bound;
}

void normalize_column_phases(CMatrix& basis)
{
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
        Eigen::Index best = -1;
        double best_abs = 0.0;
        for (Eigen::Index r = 0; r < basis.rows(); ++r) {
            // Prefer the earliest entry among near-ties so the choice is stable.
            const double mag = std::abs(basis(r, c));
            if (mag > best_abs * (1.0 + 1e-8)) {
                best_abs = mag;
                best = r;
            }
        }
        if (best < 0 || best_abs == 0.0) continue;
        const Complex phase = basis(best, c) / best_abs;
        basis.col(c) *= std::conj(phase);
    }
}

}  // namespace kproj
