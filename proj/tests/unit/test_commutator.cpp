#include <gtest/gtest.h>

#include <cmath>

#include "tlcat/commutator.hpp"

using namespace tlcat;

namespace {
const ConcreteRep& x5() {
    static const ConcreteRep rep(AlgebraSpec::parse("1,1,1,1,1"));
    return rep;
}
}  // namespace

TEST(Constants, FAtSqrt8) {
    const LowerBoundConstants c = lower_bound_constants(std::sqrt(8.0));
    EXPECT_TRUE(c.valid);
    EXPECT_NEAR(c.f, 0.1111, 5e-4);
    EXPECT_NEAR(c.f, c.g, 1e-12);
}

TEST(Constants, InvalidBelowSqrt6) {
    const LowerBoundConstants c = lower_bound_constants(std::sqrt(5.0));
    EXPECT_FALSE(c.valid);
    EXPECT_LT(c.Cq, 0.0);
    EXPECT_TRUE(std::isnan(c.f));
}

TEST(Constants, FIncreasing) {
    double prev = -1e9;
    for (int d2 = 8; d2 <= 100; ++d2) {
        const double f = lower_bound_constants(std::sqrt(static_cast<double>(d2))).f;
        EXPECT_GT(f, prev);
        prev = f;
    }
}

TEST(Prefactors, ExactMatchesNumeric) {
    const double q = 0.37;
    for (int k = 1; k <= 4; ++k)
        for (int a : {1, 0, -1}) EXPECT_NEAR(alpha_prefactor_exact(a, k).eval(q), alpha_prefactor(a, k, q), 1e-14);
    EXPECT_DOUBLE_EQ(alpha_prefactor(0, 3, q), 1.0);
}

TEST(FlipOverlap, BoundAtDelta5IsOne) {
    // ([3] + [2]^2 (1 + [2]/[4]) + [2]/[4]) / [5] = (4 + 20/3 + 1/3)/11
    EXPECT_NEAR(flip_overlap_bound(1, x5().q()), 1.0, 1e-13);
}

TEST(FlipOverlap, NormBelowBoundAndExpansionGap) {
    const double q = x5().q();
    for (int k = 1; k <= 2; ++k) {
        const FlipOverlap f = flip_overlap(x5(), k);
        EXPECT_LE(f.norm, f.bound + 1e-9);
        EXPECT_LT(f.corrected_residual, 1e-12);
        // the uncorrected expansion misses c2 p_2k, which is exactly its max deviation
        const double c2 = (1.0 + qint(2 * k, q) / qint(2 * k + 2, q)) / qint(2 * k + 3, q);
        EXPECT_NEAR(f.expansion_residual, c2, 1e-12);
    }
}

TEST(AppendixIdentities, AllPassAtK1) {
    ExactCalc calc;
    for (const auto& r : verify_appendix_identities(calc, x5(), 1)) EXPECT_TRUE(r.pass) << r.id;
}

TEST(AppendixIdentities, ZIsOne) {
    ExactCalc calc;
    EXPECT_EQ(appendix_z(calc, 2), calc.identity(0));
    EXPECT_NEAR(appendix_z_numeric(x5(), 2), 1.0, 1e-12);
}

TEST(TOperator, VacuumTargetsAndNorms) {
    TOperator T(x5(), 2);
    EXPECT_LT(T.vacuum_residual(), 1e-10);
    EXPECT_FALSE(T.has(2, 1));
    EXPECT_TRUE(T.has(1, 1));
    for (int k = 1; k <= 2; ++k) {
        for (int a : {1, 0, -1})
            if (T.has(k, a)) EXPECT_LT(T.target_residual(k, a), 1e-10);
        EXPECT_LE(T.block_norm(k, 0), 2.0 + 1e-9);
        EXPECT_LE(T.block_norm_sum0m(k), 2.0 * (1.0 + x5().q()) + 1e-9);
    }
    // T^{(-1)}_1 lands on H_0 and vanishes
    EXPECT_LT(T.block_norm(1, -1), 1e-7);
}

TEST(TOperator, SigmaMinChainAtK1) {
    TOperator T(x5(), 2);
    const double s = T.sigma_min_plus(1), a = alpha_prefactor(1, 1, x5().q());
    const double o = flip_overlap(x5(), 1).norm;
    EXPECT_GE(s * s, 2.0 * a * a * (1.0 - o * o) - 1e-8);
}

TEST(TOperator, GramDenseIsPositiveSymmetric) {
    TOperator T(x5(), 2);
    const std::vector<TPart> parts = {{1, 1}, {1, 0}, {2, 0}, {2, -1}};
    const Eigen::MatrixXd G = T.gram_dense(parts, {1, 2});
    EXPECT_EQ(G.rows(), T.block_sum_dim({1, 2}));
    EXPECT_LT((G - G.transpose()).cwiseAbs().maxCoeff(), 1e-10);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
    EXPECT_GT(es.eigenvalues().minCoeff(), -1e-10);
    // the matrix-free operator agrees with the dense one, and Lanczos finds its top
    const auto op = T.gram_operator(parts, {1, 2});
    Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(G.rows(), -1.0, 2.0);
    EXPECT_LT((op(v) - G * v).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_NEAR(lanczos_extreme(G.rows(), op, true), es.eigenvalues().maxCoeff(), 1e-8);
}
