#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "tlcat/concrete_rep.hpp"
#include "tlcat/spectral.hpp"

using namespace tlcat;

TEST(AlgebraSpec, Parse) {
    const AlgebraSpec a = AlgebraSpec::parse("2,1");
    EXPECT_EQ(a.dimB, 5);
    EXPECT_NEAR(a.delta, std::sqrt(5.0), 1e-14);
    EXPECT_EQ(AlgebraSpec::parse("2,2").dimB, 8);
    EXPECT_THROW(AlgebraSpec::parse("2,x"), RepresentationError);
    EXPECT_THROW(AlgebraSpec::parse(""), RepresentationError);
    EXPECT_THROW(AlgebraSpec::parse("1,1,1"), RepresentationError);
}

TEST(ConcreteRep, BudgetIsEnforced) {
    ConcreteRep rep(AlgebraSpec::parse("1,1,1,1,1"), 200);
    EXPECT_NO_THROW(rep.check_budget(3));
    EXPECT_THROW(rep.check_budget(4), ResourceError);
}

TEST(ConcreteRep, BudgetFromEnv) {
    ::setenv("TLCAT_BUDGET", "12345", 1);
    EXPECT_EQ(budget_from_env(), 12345);
    ::setenv("TLCAT_BUDGET", "nonsense", 1);
    EXPECT_THROW(budget_from_env(), std::invalid_argument);
    ::unsetenv("TLCAT_BUDGET");
    EXPECT_EQ(budget_from_env(), kDefaultBudget);
}

TEST(ConcreteRep, StructureMaps) {
    for (const char* s : {"1,1,1,1,1", "2,1", "2,2"}) {
        ConcreteRep rep(AlgebraSpec::parse(s));
        const StructureCheck c = check_structure_maps(rep);
        EXPECT_LT(c.mmstar, 1e-12) << s;
        EXPECT_LT(c.nu_norm, 1e-12) << s;
        EXPECT_LT(c.assoc, 1e-12) << s;
        EXPECT_LT(c.unit, 1e-12) << s;
        EXPECT_LT(c.frobenius, 1e-12) << s;
    }
}

TEST(ConcreteRep, DimensionBridge) {
    for (const char* s : {"1,1,1,1,1", "1,1,1,1,1,1", "2,1", "2,2"}) {
        ConcreteRep rep(AlgebraSpec::parse(s));
        for (int k = 1; k <= 3; ++k) EXPECT_EQ(rep.irrep_dimension(k), rep_dimension(rep.dimB(), k).get_si()) << s;
    }
    ConcreteRep x5(AlgebraSpec::parse("1,1,1,1,1"));
    EXPECT_EQ(x5.irrep_dimension(1), 4);
    EXPECT_EQ(x5.irrep_dimension(2), 11);
    EXPECT_EQ(x5.irrep_dimension(3), 29);
    EXPECT_EQ(x5.irrep_dimension_compressed(3), 29);
}

TEST(ConcreteRep, FunctorOnProducts) {
    ConcreteRep rep(AlgebraSpec::parse("2,1"));
    ExactCalc c;
    const ExactElement a = c.m_star() * c.m(), b = c.jw(4);
    const Eigen::MatrixXd lhs = rep.represent(a * b), rhs = rep.represent(a) * rep.represent(b);
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
    const Eigen::MatrixXd t = rep.represent(tensor(c.m(), c.identity(2)));
    EXPECT_LT((t - kron(rep.represent(c.m()), Eigen::MatrixXd::Identity(5, 5))).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ConcreteRep, IrrepBasisIsOrthonormalAndInvariant) {
    ConcreteRep rep(AlgebraSpec::parse("1,1,1,1,1"));
    const Eigen::MatrixXd& V = rep.irrep_basis(2);
    EXPECT_LT((V.transpose() * V - Eigen::MatrixXd::Identity(V.cols(), V.cols())).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((rep.represent_jw(2) * V - V).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ConcreteRep, F1AndT2) {
    ConcreteRep rep(AlgebraSpec::parse("2,2"));
    const Eigen::MatrixXd F = rep.F1();
    const long d = F.rows();
    EXPECT_EQ(d, 7);
    EXPECT_LT((F * F.transpose() - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(rep.t_vector(2).norm(), 1.0, 1e-12);
}

TEST(ConcreteRep, ShiftIsCyclic) {
    ConcreteRep rep(AlgebraSpec::parse("1,1,1,1,1"));
    std::mt19937 rng(2);
    std::normal_distribution<double> nd;
    Batch x(2, 125);
    for (long i = 0; i < x.size(); ++i) x(i) = nd(rng);
    Batch y = x;
    for (int i = 0; i < 3; ++i) y = rep.shift(y, 3, true);
    EXPECT_LT((y - x).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((rep.shift(rep.shift(x, 3, true), 3, false) - x).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Numerics, OperatorNormAndRank) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
    a(0, 0) = 3, a(1, 1) = -5, a(2, 2) = 1e-12;
    EXPECT_NEAR(operator_norm(a), 5.0, 1e-9);
    EXPECT_EQ(numeric_rank(a), 2);
    EXPECT_NEAR(hs_norm(a), std::sqrt(34.0), 1e-12);
}
