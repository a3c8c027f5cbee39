#include <gtest/gtest.h>

#include <cmath>

#include "tlcat/rd_harness.hpp"

using namespace tlcat;

namespace {
const ConcreteRep& x5() {
    static const ConcreteRep rep(AlgebraSpec::parse("1,1,1,1,1"));
    return rep;
}
}  // namespace

TEST(Fusion, Neighbors) {
    EXPECT_EQ(fusion_neighbors(1, 1), (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(fusion_neighbors(0, 3), (std::vector<int>{3}));
    EXPECT_EQ(fusion_neighbors(2, 0), (std::vector<int>{2}));
    // |n - l| <= k <= n + l
    EXPECT_EQ(fusion_neighbors(2, 3).size(), 5u);
}

TEST(DualConvolution, RhoIsScaledIsometry) {
    DualConvolution conv(x5());
    for (auto [n, k, l] : {std::tuple{1, 1, 0}, std::tuple{1, 1, 1}, std::tuple{1, 2, 2}, std::tuple{2, 2, 1}}) {
        const Eigen::MatrixXd& R = conv.rho(n, k, l);
        EXPECT_EQ(R.rows(), conv.dim(n) * conv.dim(k));
        const double c = coupling_constant_numeric(n, k, l, x5().q());
        EXPECT_LT((R.transpose() * R - c * Eigen::MatrixXd::Identity(R.cols(), R.cols())).cwiseAbs().maxCoeff(), 1e-12);
        const Eigen::MatrixXd P = conv.delta_projection(n, k, l);
        EXPECT_LT((P * P - P).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(DualConvolution, ProjectionsResolveTheIdentity) {
    DualConvolution conv(x5());
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(conv.dim(1) * conv.dim(2), conv.dim(1) * conv.dim(2));
    for (int l : fusion_neighbors(1, 2)) S += conv.delta_projection(1, 2, l);
    EXPECT_LT((S - Eigen::MatrixXd::Identity(S.rows(), S.cols())).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(DualConvolution, CoherenceAndL2Identity) {
    DualConvolution conv(x5());
    const CoherenceResult c = convolution_coherence(conv, 1, 5, 3);
    EXPECT_LT(c.assoc, 1e-9);
    EXPECT_LT(c.unit, 1e-9);
    EXPECT_LT(rd_l2_identity(conv, 1, 1, 1, 10, 4), 1e-8);
    EXPECT_LT(rd_l2_identity(conv, 1, 2, 2, 10, 5), 1e-8);
}

TEST(DualConvolution, Bilinear) {
    DualConvolution conv(x5());
    std::mt19937 rng(6);
    const DualElement x = conv.random_element({0, 1}, rng), y = conv.random_element({1}, rng),
                      z = conv.random_element({1}, rng);
    const DualElement lhs = conv.convolve(x, y + z, 2);
    const DualElement rhs = conv.convolve(x, y, 2) + conv.convolve(x, z, 2);
    EXPECT_LT(lhs.max_abs_diff(rhs), 1e-12);
}

TEST(HSInequality, MarginsAndBranchBounds) {
    DualConvolution conv(x5());
    const double D0 = empirical_D0(x5().q());
    for (auto [n, k, l] : {std::tuple{1, 1, 0}, std::tuple{1, 1, 1}, std::tuple{1, 1, 2}}) {
        const HSScanRow row = hs_inequality_scan(conv, n, k, l, 10, 8, D0);
        EXPECT_GE(row.margin, 0.0);
        EXPECT_LE(row.max_ratio, row.refined_ratio + 1e-12);
        EXPECT_LE(row.branch_ratio, row.branch_bound + 1e-9);
    }
}

TEST(RapidDecay, UniformConstantFormula) {
    const double q = 0.5, D0 = 0.25;
    EXPECT_NEAR(rd_uniform_constant(q, D0), qint(2, q) * qint(3, q) / (D0 * 0.75), 1e-12);
}
