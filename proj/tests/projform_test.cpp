#include <gtest/gtest.h>

#include "kproj/projform.hpp"
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

Matrix skew_example()
{
    return oracle::mat2(1, 1, 0, 0);
}

}  // namespace

TEST(BlockForm, RoundTripAndUnitary)
{
    oracle::Gen gen(21);
    for (int trial = 0; trial < 30; ++trial) {
        const Eigen::Index n = gen.integer(1, 9);
        const Eigen::Index r = gen.integer(0, static_cast<int>(n));
        const Matrix p = gen.idempotent(n, r, gen.uniform(0.0, 3.0));
        const BlockForm bf = block_form(p);
        EXPECT_EQ(bf.rank(), r);
        EXPECT_EQ(bf.p1.rows(), r);
        EXPECT_EQ(bf.p1.cols(), n - r);
        EXPECT_LT((bf.reassemble() - p).norm(), 1e-10 * tolerance_scale(p));
        const Matrix w = bf.unitary();
        EXPECT_LT((w.adjoint() * w - Matrix::Identity(n, n)).norm(), 1e-12);

        const Matrix blk = gen.complex(n, n, 1.0);
        EXPECT_LT((bf.to_block(bf.to_ambient(blk)) - blk).norm(), 1e-12);
    }
}

TEST(BlockForm, CornerVanishesExactlyForOrthogonal)
{
    oracle::Gen gen(22);
    const Matrix p = gen.idempotent(6, 2, 0.0);
    EXPECT_LT(block_form(p).p1.norm(), 1e-12);
}

TEST(BlockForm, TwoByTwoCornerModulus)
{
    // P = [[1, 1], [0, 0]]: R(P) = span(e1), so |p1| = |P e2| = 1.
    const BlockForm bf = block_form(skew_example());
    ASSERT_EQ(bf.p1.size(), 1);
    EXPECT_NEAR(std::abs(bf.p1(0, 0)), 1.0, 1e-14);
}

TEST(Idempotent, Validation)
{
    EXPECT_TRUE(validate_idempotent(skew_example()));
    EXPECT_FALSE(validate_idempotent(oracle::mat2(1, 1, 0, 1)));
    EXPECT_EQ(code_of([] { require_idempotent(oracle::mat2(0.5, 0, 0, 0), {}, "t"); }), ErrorCode::NotIdempotent);
    EXPECT_EQ(code_of([] { block_form(oracle::mat2(2, 0, 0, 0)); }), ErrorCode::NotIdempotent);
}

TEST(KernelProjections, BothRoutesMatchOracle)
{
    oracle::Gen gen(23);
    for (int trial = 0; trial < 25; ++trial) {
        const Eigen::Index n = gen.integer(1, 8);
        const Eigen::Index r = gen.integer(0, static_cast<int>(n));
        const Matrix p = random_idempotent(n, r, gen.uniform(0.0, 2.0), gen.seed(),
                                           gen.integer(0, static_cast<int>(n - r)));
        const KernelProjections k = kernel_projections(p);
        EXPECT_LT((k.p_ker_sum - oracle::proj_kernel(p + p.adjoint(), 1e-8)).norm(), 1e-8);
        EXPECT_LT((k.p_ker_diff - oracle::kernel_of(p - p.adjoint(), 1e-8)).norm(), 1e-8);
    }
}

TEST(KernelProjections, OrthogonalProjection)
{
    // P = diag(1, 0, 0): P + P* has kernel span(e2, e3); P - P* = 0.
    Matrix p = Matrix::Zero(3, 3);
    p(0, 0) = 1.0;
    const KernelProjections k = kernel_projections(p);
    Matrix expect = Matrix::Identity(3, 3);
    expect(0, 0) = 0.0;
    EXPECT_LT((k.p_ker_sum - expect).norm(), 1e-14);
    EXPECT_LT((k.p_ker_diff - Matrix::Identity(3, 3)).norm(), 1e-14);
}

TEST(Generators, RandomIdempotentProperties)
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 10);
        const Eigen::Index r = static_cast<Eigen::Index>(seed % static_cast<std::uint64_t>(n + 1));
        const Matrix p = random_idempotent(n, r, 2.0, seed);
        EXPECT_LT((p * p - p).norm(), 1e-12 * tolerance_scale(p));
        EXPECT_EQ(block_form(p).rank(), r);
        EXPECT_LE(block_form(p).p1.norm(), 2.0 * static_cast<double>(n) + 1e-9);
        EXPECT_EQ(p, random_idempotent(n, r, 2.0, seed));
    }
}

TEST(Generators, ExactEdges)
{
    EXPECT_EQ(random_idempotent(3, 3, 2.0, 0), Matrix::Identity(3, 3));
    EXPECT_EQ(random_idempotent(4, 0, 2.0, 5), Matrix::Zero(4, 4));
    EXPECT_EQ(code_of([] { random_idempotent(3, 4, 1.0, 0); }), ErrorCode::BadRank);
    EXPECT_EQ(code_of([] { random_idempotent(3, -1, 1.0, 0); }), ErrorCode::BadRank);
    EXPECT_EQ(code_of([] { random_idempotent(4, 2, 1.0, 0, 3); }), ErrorCode::BadRank);
    EXPECT_EQ(code_of([] { random_idempotent(4, 2, -1.0, 0); }), ErrorCode::InvalidArgument);
}

TEST(Generators, CornerCapped)
{
    const Matrix p = random_idempotent(12, 6, 1e6, 3);
    EXPECT_LE(spectral_norm(block_form(p).p1), kMaxCornerNorm * (1.0 + 1e-9));
    EXPECT_LT((p * p - p).norm(), 1e-9 * tolerance_scale(p));
}

TEST(Generators, ZeroCornerColumnsMakeCornerRankDeficient)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Matrix p = random_idempotent(8, 3, 1.0, seed, 3);
        const BlockForm bf = block_form(p);
        const SubspaceBases sb = fundamental_subspaces(bf.p1);
        EXPECT_EQ(sb.range.cols(), 2);  // 5 columns, 3 forced to zero
    }
}

TEST(Generators, HaarUnitaryAndSymmetries)
{
    Rng rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::Index n = 1 + trial;
        const Matrix u = haar_unitary(n, rng);
        EXPECT_LT((u.adjoint() * u - Matrix::Identity(n, n)).norm(), 1e-12);
        EXPECT_TRUE(is_symmetry(random_symmetry(n, rng)));
    }
}

TEST(Generators, SymmetryOnSubspace)
{
    oracle::Gen gen(24);
    const Matrix basis = gen.unitary(6).leftCols(3);
    const Matrix s = random_symmetry_on(basis, 4);
    EXPECT_EQ(s.rows(), 3);
    EXPECT_TRUE(is_symmetry(s));
    EXPECT_EQ(code_of([&] { random_symmetry_on(2.0 * basis, 4); }), ErrorCode::NotOrthonormal);
}
