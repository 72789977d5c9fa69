#include <gtest/gtest.h>

#include <cmath>

#include "kproj/decomp.hpp"
#include "oracle.hpp"

using namespace kproj;
using oracle::Matrix;

namespace {

ErrorCode code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InternalMismatch;
}

struct Pair {
    Matrix p;
    Matrix j;
};

// J-projection pair from a random idempotent and sampled block parameters.
Pair random_pair(std::uint64_t seed)
{
    oracle::Gen gen(seed);
    const Eigen::Index n = gen.integer(2, 9);
    const Eigen::Index r = gen.integer(0, static_cast<int>(n));
    const Eigen::Index zc = r < n ? gen.integer(0, static_cast<int>(n - r)) : 0;
    const Matrix p = random_idempotent(n, r, gen.uniform(0.0, 2.0), gen.seed(), zc);
    const BlockForm bf = block_form(p);
    const SymmetryParams prm = sample_params(bf, SymmetryFamily::JProjection, 1, gen.seed()).front();
    return {p, assemble_symmetry(bf, SymmetryFamily::JProjection, prm)};
}

}  // namespace

TEST(NegativePart, ScalarWorkedExample)
{
    // B = [1]: S = [[1, 1], [1, 0]], eigenvalues (1 -+ sqrt 5)/2.
    const double r5 = 1.0 / std::sqrt(5.0);
    const Matrix expect = oracle::mat2((1 - r5) / 2, -r5, -r5, (1 + r5) / 2);
    const Matrix b = Matrix::Ones(1, 1);
    const auto [lo, hi] = oracle::eig2(1.0, 1.0, 0.0);
    ASSERT_NEAR(lo, (1 - std::sqrt(5.0)) / 2, 1e-15);
    (void)hi;
    // Hand eigenvector of lo: (1, lo - 1).
    Eigen::Vector2cd v(1.0, lo - 1.0);
    v.normalize();
    ASSERT_LT((Matrix(v * v.adjoint()) - expect).norm(), 1e-15);

    EXPECT_LT((negative_part_projection_closed_form(b) - expect).norm(), 1e-12);
    EXPECT_LT((negative_part_projection_formula(b) - expect).norm(), 1e-12);
}

TEST(NegativePart, MatchesJacobiOracleOnRandomBlocks)
{
    oracle::Gen gen(41);
    for (int trial = 0; trial < 60; ++trial) {
        const Eigen::Index m = gen.integer(0, 8), k = gen.integer(0, 6);
        Matrix b = gen.complex(m, k, 3.0);
        if (trial % 4 == 0 && k > 1) b.col(0).setZero();  // rank deficient
        const Matrix oracle_proj = oracle::proj_negative(bordered_matrix(b));
        EXPECT_LT((negative_part_projection_closed_form(b) - oracle_proj).norm(), 1e-9) << m << "x" << k;
    }
}

TEST(NegativePart, HalfCornerGivesNegativePartOfSum)
{
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const Eigen::Index n = 1 + static_cast<Eigen::Index>(seed % 10);
        const Matrix p = random_idempotent(n, static_cast<Eigen::Index>(seed % static_cast<std::uint64_t>(n + 1)),
                                           2.0, seed);
        const BlockForm bf = block_form(p);
        const Matrix from_sum = bf.to_block(oracle::proj_negative(p + p.adjoint()));
        EXPECT_LT((negative_part_projection_closed_form(bf.p1 / 2.0) - from_sum).norm(), 1e-9);
    }
}

TEST(Params, ExtractRoundTrip)
{
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const Pair pr = random_pair(seed);
        const SymmetryParams prm = extract_params(pr.p, pr.j);
        const Matrix back = assemble_symmetry(block_form(pr.p), SymmetryFamily::JProjection, prm);
        EXPECT_LT((back - pr.j).norm(), 1e-9);
    }
}

TEST(Splits, WorkedExampleTwoByTwo)
{
    const double s = 1.0 / std::sqrt(2.0);
    const Matrix p = oracle::mat2(1, 1, 0, 0);
    const Matrix j = oracle::mat2(s, s, s, -s);
    const Matrix id = Matrix::Identity(2, 2);

    const SplitResult ce = contractive_expansive_split(p, j);
    EXPECT_LT((ce.e1 - id).norm(), 1e-12);
    EXPECT_LT((ce.e2 - p).norm(), 1e-12);

    const SplitResult pn = positive_negative_split(p, j);
    EXPECT_LT((pn.e1 - p).norm(), 1e-12);
    EXPECT_LT(pn.e2.norm(), 1e-12);
}

TEST(Splits, DiagonalWithIdentitySymmetry)
{
    Matrix p = Matrix::Zero(2, 2);
    p(0, 0) = 1.0;
    const SplitResult pn = positive_negative_split(p, Matrix::Identity(2, 2));
    EXPECT_LT((pn.e1 - p).norm(), 1e-14);
    EXPECT_LT(pn.e2.norm(), 1e-14);
}

TEST(Splits, IdentitiesOnRandomPairs)
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Pair pr = random_pair(seed);
        const Matrix& p = pr.p;
        const Matrix& j = pr.j;
        const Eigen::Index n = p.rows();
        const Matrix id = Matrix::Identity(n, n);
        const double t = 1e-9 * tolerance_scale(p);

        const SplitResult ce = contractive_expansive_split(p, j);
        const Matrix& e1 = ce.e1;
        const Matrix& e2 = ce.e2;
        EXPECT_LT((e1 * e1 - e1).norm(), t);
        EXPECT_LT((e2 * e2 - e2).norm(), t);
        EXPECT_LT((e1 * e2 - p).norm(), t);
        EXPECT_LT((e2 * e1 - p).norm(), t);
        EXPECT_LT((e1 + e2 - id - p).norm(), t);
        EXPECT_GE(oracle::min_eig(j - e1.adjoint() * j * e1), -t);
        EXPECT_GE(oracle::min_eig(e2.adjoint() * j * e2 - j), -t);

        const SplitResult pn = positive_negative_split(p, j);
        const Matrix& q = pn.e1;
        const Matrix& r = pn.e2;
        EXPECT_LT((q + r - p).norm(), t);
        EXPECT_LT((q * r).norm(), t);
        EXPECT_LT((r * q).norm(), t);
        EXPECT_LT((q * r.adjoint()).norm(), t);
        const Matrix jq = j * q;
        EXPECT_LT((jq - jq.adjoint()).norm(), t);
        EXPECT_GE(oracle::min_eig((jq + jq.adjoint()) / 2.0), -t);
        const Matrix jr = j * r;
        EXPECT_LE(-oracle::min_eig(-(jr + jr.adjoint()) / 2.0), t);
    }
}

TEST(Splits, RejectNonJProjection)
{
    const Matrix p = oracle::mat2(1, 1, 0, 0);
    EXPECT_EQ(code_of([&] { contractive_expansive_split(p, Matrix::Identity(2, 2)); }), ErrorCode::NotJProjection);
    EXPECT_EQ(code_of([&] { positive_negative_split(p, 2.0 * Matrix::Identity(2, 2)); }), ErrorCode::NotSymmetry);
    EXPECT_EQ(code_of([&] { require_j_projection(p, Matrix::Identity(3, 3), {}); }), ErrorCode::DimensionMismatch);
}

TEST(Intertwining, ResidualAndSingularValues)
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Eigen::Index n = 1 + static_cast<Eigen::Index>(seed % 10);
        const Eigen::Index r = static_cast<Eigen::Index>((seed * 3) % static_cast<std::uint64_t>(n + 1));
        const Matrix p = random_idempotent(n, r, 1.5, seed);
        const Intertwining it = intertwining_unitaries(p);
        EXPECT_LT(it.residual, 1e-9 * tolerance_scale(p));
        EXPECT_LT((it.u1.adjoint() * it.u1 - Matrix::Identity(n - r, n - r)).norm(), 1e-10);
        EXPECT_LT((it.v1.adjoint() * it.v1 - Matrix::Identity(r, r)).norm(), 1e-10);

        const std::vector<double> sp = oracle::eigenvalues(it.form_p.p1.adjoint() * it.form_p.p1);
        const std::vector<double> sq = oracle::eigenvalues(it.form_q.p1 * it.form_q.p1.adjoint());
        ASSERT_EQ(sp.size(), sq.size());
        for (std::size_t i = 0; i < sp.size(); ++i) EXPECT_NEAR(sp[i], sq[i], 1e-8);
    }
}

TEST(Similarity, AdjointAndComplement)
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Eigen::Index n = 1 + static_cast<Eigen::Index>(seed % 10);
        const Eigen::Index r = static_cast<Eigen::Index>((seed * 5) % static_cast<std::uint64_t>(n + 1));
        const Matrix p = random_idempotent(n, r, 2.0, seed, r < n && seed % 2 ? 1 : 0);
        const Matrix id = Matrix::Identity(n, n);

        const Similarity a = adjoint_similarity(p);
        EXPECT_LT((a.u.adjoint() * a.u - id).norm(), 1e-10);
        EXPECT_LT((a.u.adjoint() * p.adjoint() * a.u - p).norm(), 1e-9 * tolerance_scale(p));

        const Similarity c = complement_equivalence(p);
        const Matrix lhs = shifted_sum(p);
        const Matrix rhs = shifted_sum(id - p);
        EXPECT_LT((c.u.adjoint() * lhs * c.u - rhs).norm(), 1e-9 * tolerance_scale(p));
        const std::vector<double> el = oracle::eigenvalues(lhs), er = oracle::eigenvalues(rhs);
        for (std::size_t i = 0; i < el.size(); ++i) EXPECT_NEAR(el[i], er[i], 1e-9 * tolerance_scale(p));
        EXPECT_LT(c.spectrum_gap, 1e-9 * tolerance_scale(p));
    }
}

TEST(ShiftedSum, OrthogonalProjectionCase)
{
    // P orthogonal: P + P* + 2(I - P) = 2I.
    oracle::Gen gen(43);
    const Matrix p = gen.idempotent(5, 2, 0.0);
    EXPECT_LT((shifted_sum(p) - 2.0 * Matrix::Identity(5, 5)).norm(), 1e-12);
}

TEST(ComplementIdentities, HoldIncludingRankDeficientCorners)
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 10);
        const Eigen::Index r = 1 + static_cast<Eigen::Index>(seed % static_cast<std::uint64_t>(n - 1));
        const Eigen::Index zc = static_cast<Eigen::Index>(seed % static_cast<std::uint64_t>(n - r + 1));
        const Matrix p = random_idempotent(n, r, seed % 3 == 0 ? 0.5 : 2.0, seed, zc);
        const Report rep = complement_projection_identities(p);
        EXPECT_EQ(rep.checks.size(), 6u);
        for (const CheckResult& c : rep.checks) EXPECT_TRUE(c.passed()) << c.name << " seed " << seed;

        // Independent check of the positive part identity.
        const Matrix id = Matrix::Identity(n, n);
        const Matrix q = id - p;
        const Matrix lhs = oracle::proj_positive(q + q.adjoint(), 1e-8);
        const Matrix rhs = oracle::proj_negative(p + p.adjoint(), 1e-8) + oracle::proj_kernel(p + p.adjoint(), 1e-8);
        EXPECT_LT((lhs - rhs).norm(), 1e-8);
    }
}
