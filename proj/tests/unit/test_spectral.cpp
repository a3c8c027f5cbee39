#include <gtest/gtest.h>

#include <cmath>

#include "tlcat/spectral.hpp"

using namespace tlcat;

TEST(Polynomials, SmallPi) {
    EXPECT_EQ(pi_poly(0), IntPolynomial({1}));
    EXPECT_EQ(pi_poly(1), IntPolynomial({-1, 1}));
    EXPECT_EQ(pi_poly(2), IntPolynomial({1, -3, 1}));
    EXPECT_EQ(pi_poly(3), IntPolynomial({-1, 6, -5, 1}));
    EXPECT_EQ(pi_poly(3).to_string(), "x^3 - 5x^2 + 6x - 1");
}

TEST(Polynomials, ChebyshevRoute) {
    EXPECT_EQ(chebyshev_S(4), IntPolynomial({1, 0, -3, 0, 1}));
    for (int k = 0; k <= 20; ++k) EXPECT_EQ(pi_from_chebyshev(k), pi_poly(k));
}

TEST(Polynomials, MonicOfDegreeK) {
    for (int k = 0; k <= 12; ++k) {
        EXPECT_EQ(pi_poly(k).degree(), k);
        EXPECT_EQ(pi_poly(k).leading(), 1);
    }
}

TEST(Moments, CatalanNumbers) {
    const long want[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796};
    for (int j = 0; j <= 10; ++j) EXPECT_EQ(free_poisson_moment(j), want[j]);
    EXPECT_EQ(free_poisson_moment(16), 35357670);
}

TEST(Moments, QuadratureAgrees) {
    for (int j = 0; j <= 16; ++j) {
        const double e = free_poisson_moment(j).get_d();
        EXPECT_NEAR(free_poisson_moment_quadrature(j), e, 1e-9 * e) << j;
    }
    EXPECT_EQ(moment_table(3).size(), 7u);
}

TEST(Moments, Orthonormality) {
    for (int k = 0; k <= 6; ++k)
        for (int l = 0; l <= 6; ++l) EXPECT_TRUE(orthonormality_check(k, l));
    EXPECT_EQ(pi_pairing(3, 3), 1);
}

TEST(Dimensions, FrozenTables) {
    const long x5[] = {1, 4, 11, 29, 76, 199, 521};
    for (int k = 0; k <= 6; ++k) {
        EXPECT_EQ(rep_dimension(5, k), x5[k]);
        EXPECT_EQ(rep_dimension_recursive(5, k), x5[k]);
    }
    const long b8[] = {1, 7, 41, 239, 1393};
    for (int k = 0; k <= 4; ++k) EXPECT_EQ(rep_dimension(8, k), b8[k]);
}

TEST(Characters, SupNorm) {
    for (int n = 0; n <= 8; ++n) EXPECT_NEAR(character_sup_norm(n), 2 * n + 1, 1e-9);
}

TEST(Multipliers, EigenvaluesAndDomain) {
    EXPECT_DOUBLE_EQ(multiplier_eigenvalue(4.7, 5, 0), 1.0);
    EXPECT_NEAR(multiplier_eigenvalue(4.7, 5, 1), 3.7 / 4.0, 1e-15);
    EXPECT_NEAR(multiplier_eigenvalue(4.7, 5, 2), (4.7 * 4.7 - 3 * 4.7 + 1) / 11.0, 1e-14);
    EXPECT_THROW(multiplier_eigenvalue(4.4, 5, 1), std::domain_error);
    EXPECT_THROW(multiplier_eigenvalue(5.0, 5, 1), std::domain_error);
    EXPECT_THROW(multiplier_eigenvalue(4.7, 5, 1, 5.5), std::domain_error);
    EXPECT_THROW(multiplier_eigenvalue(4.7, 4, 1), std::domain_error);
    EXPECT_NEAR(empirical_A(kDefaultT0, 5), 1.0, 1e-12);
}

TEST(Multipliers, EigenvaluesMonotoneInT) {
    for (int k = 1; k <= 50; ++k) {
        double prev = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double v = multiplier_eigenvalue(4.5 + 0.025 * i, 5, k);
            EXPECT_GT(v, prev);
            EXPECT_LE(v, 1.0);
            prev = v;
        }
    }
}

TEST(Tail, ClosedFormAndSchedule) {
    EXPECT_NEAR(tail_bound(2.5, 5, 0), tail_bound_summed(2.5, 5, 0), 1e-13);
    // r = 1/2, n = 0: sum_{k >= 1} (2k+1) 2^{-k} = 5
    EXPECT_NEAR(tail_bound(2.5, 5, 0), 5.0, 1e-13);
    EXPECT_DOUBLE_EQ(schedule_t(0, 5), 4.5);
    EXPECT_DOUBLE_EQ(schedule_t(99, 5), 4.5);
    EXPECT_NEAR(schedule_t(399, 5), 4.75, 1e-15);
    EXPECT_LT(schedule_t(100000000, 5), 5.0);
    EXPECT_THROW(tail_bound(5.0, 5, 1), std::domain_error);
}

TEST(Tail, ScheduleTailDecreasesButSlowly) {
    double prev = 1e300;
    for (int n = 0; n <= 1500; ++n) {
        const double v = tail_bound(schedule_t(n, 5), 5, n);
        EXPECT_LE(v, prev);
        prev = v;
    }
    EXPECT_NEAR(tail_bound(schedule_t(400, 5), 5, 400), 2.018e-5, 1e-8);
    EXPECT_LT(tail_bound(schedule_t(1000, 5), 5, 1000), 1e-9);
}
