#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tlcat/qarith.hpp"

using namespace tlcat;

namespace {
const double kQ5 = (std::sqrt(5.0) - 1.0) / 2.0;  // q at delta^2 = 5
}

TEST(QFromDelta, KnownValues) {
    EXPECT_NEAR(q_from_delta(std::sqrt(8.0)).q, std::sqrt(2.0) - 1.0, 1e-15);
    EXPECT_NEAR(q_from_delta(std::sqrt(5.0)).q, kQ5, 1e-15);
    EXPECT_DOUBLE_EQ(q_from_delta(2.0).q, 1.0);
    EXPECT_THROW(q_from_delta(1.5), std::domain_error);
}

TEST(QFromDelta, DimBCarriesDimension) {
    const DeltaParameter p = q_from_dimB(8);
    ASSERT_TRUE(p.dimB.has_value());
    EXPECT_EQ(*p.dimB, 8);
    EXPECT_NEAR(p.delta * p.delta, 8.0, 1e-13);
}

TEST(QInteger, SmallCasesAreLaurent) {
    const QRationalFunction q = QRationalFunction::q();
    EXPECT_EQ(q_integer(1), QRationalFunction(1L));
    EXPECT_EQ(q_integer(2), q + q.inverse());
    EXPECT_EQ(q_integer(3), q * q + QRationalFunction(1L) + q.pow(-2));
    for (int a = 1; a <= 25; ++a) {
        EXPECT_TRUE(q_integer(a).is_laurent());
        EXPECT_TRUE(q_integer(a).numerator().is_palindromic());
        EXPECT_DOUBLE_EQ(q_integer(a).eval(1.0), a);
    }
}

TEST(QInteger, NumericAtDelta5) {
    // [2] = sqrt 5, [3] = 4, [4] = 3 sqrt 5, [5] = 11
    EXPECT_NEAR(qint(2, kQ5), std::sqrt(5.0), 1e-14);
    EXPECT_NEAR(qint(3, kQ5), 4.0, 1e-14);
    EXPECT_NEAR(qint(4, kQ5), 3.0 * std::sqrt(5.0), 1e-13);
    EXPECT_NEAR(qint(5, kQ5), 11.0, 1e-13);
}

TEST(QInteger, ProductRule) {
    // [2][a] = [a+1] + [a-1]
    for (int a = 2; a <= 15; ++a) EXPECT_EQ(q_integer(2) * q_integer(a), q_integer(a + 1) + q_integer(a - 1));
}

TEST(QRationalFunction, FieldAxiomsOnRandomElements) {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> a(1, 7);
    for (int i = 0; i < 30; ++i) {
        const QRationalFunction x = q_integer(a(rng)) / q_integer(a(rng));
        const QRationalFunction y = q_integer(a(rng)) + QRationalFunction::q().pow(a(rng) - 4);
        const QRationalFunction z = q_integer(a(rng)).inverse();
        EXPECT_EQ((x + y) * z, x * z + y * z);
        EXPECT_EQ(x * y, y * x);
        EXPECT_TRUE((x / x).is_one());
        EXPECT_EQ(x.inverted_variable().inverted_variable(), x);
    }
}

TEST(QRationalFunction, CanonicalFormMakesEqualityStructural) {
    const QRationalFunction a = q_integer(6) / q_integer(3);
    const QRationalFunction b = q_integer(2) * (QRationalFunction::q().pow(2) - QRationalFunction(1L) +
                                                QRationalFunction::q().pow(-2));
    EXPECT_EQ(a, b);
}

TEST(CouplingConstant, FrozenValues) {
    for (int k = 0; k <= 4; ++k) EXPECT_TRUE(coupling_constant(k, k, 0).is_one());
    EXPECT_EQ(coupling_constant(1, 1, 1), q_integer(4) / q_integer(2).pow(3));
    // at delta^2 = 5: [4]/[2]^3 = 3 sqrt5 / (5 sqrt5)
    EXPECT_NEAR(coupling_constant_numeric(1, 1, 1, kQ5), 0.6, 1e-14);
    // C(1,1,2) = 1: rho_2^{1 x 1} = p_4
    EXPECT_TRUE(coupling_constant(1, 1, 2).is_one());
    for (int k = 0; k <= 5; ++k)
        EXPECT_EQ(coupling_constant(1, k + 1, k), q_integer(2 * k + 3) / (q_integer(3) * q_integer(2 * k + 1)));
}

TEST(CouplingConstant, MonomialAndRationalRoutesAgree) {
    for (int n = 0; n <= 4; ++n)
        for (int k = 0; k <= 4; ++k)
            for (int l = std::abs(n - k); l <= n + k; ++l) {
                const QRationalFunction c = coupling_constant(n, k, l);
                EXPECT_EQ(coupling_monomial(n, k, l).to_rational(), c);
                EXPECT_NEAR(coupling_constant_numeric(n, k, l, 0.37), c.eval(0.37), 1e-12);
            }
}

TEST(CouplingConstant, PropertyBetweenD0AndOne) {
    for (double q : {0.1, 0.3, kQ5, 0.9})
        for (int n = 0; n <= 6; ++n)
            for (int k = 0; k <= 6; ++k)
                for (int l = std::abs(n - k); l <= n + k; ++l) {
                    const double c = coupling_constant_numeric(n, k, l, q);
                    EXPECT_GT(c, 0.0);
                    EXPECT_LE(c, 1.0 + 1e-12);
                }
    EXPECT_NEAR(empirical_D0(kQ5), 0.2996, 1e-4);
}

TEST(Fusion, Admissibility) {
    EXPECT_EQ(fusion_defect(2, 3, 3), 2);
    EXPECT_TRUE(admissible(1, 1, 0));
    EXPECT_FALSE(admissible(1, 1, 3));
    EXPECT_THROW(fusion_defect(1, 3, 1), FusionError);
}

TEST(AoAlpha, ClosedFormsAndSandwich) {
    EXPECT_DOUBLE_EQ(ao_alpha(0, 0.4), 1.0);
    EXPECT_NEAR(ao_alpha(1, 0.4), 1.0 / std::sqrt(2.0), 1e-15);
    for (int l = 0; l <= 40; ++l) {
        const double up = 1.0 / std::sqrt(l + 1.0);
        EXPECT_LE(ao_alpha(l, 0.4), up + 1e-15);
        EXPECT_GE(ao_alpha(l, 0.4), (1.0 - 0.16) * up - 1e-15);
    }
    EXPECT_THROW(ao_alpha(1, 1.0), std::domain_error);
}

TEST(ZLaurent, QintAndOverflow) {
    const ZLaurent q3 = ZLaurent::qint(3);
    EXPECT_EQ(q3.low(), -2);
    EXPECT_EQ(q3.high(), 2);
    EXPECT_EQ(q3.coeff(0), 1);
    EXPECT_EQ(q3.coeff(1), 0);
    EXPECT_EQ(q3.to_qlaurent(), q_integer(3).numerator());
    ZLaurent big = ZLaurent::monomial(1L << 62, 0);
    EXPECT_THROW(big + big, std::overflow_error);
    ZLaurent quo;
    EXPECT_TRUE(ZLaurent::divide_exact(ZLaurent::qint(6), ZLaurent::qint(3), quo));
    EXPECT_EQ(quo * ZLaurent::qint(3), ZLaurent::qint(6));
    EXPECT_FALSE(ZLaurent::divide_exact(ZLaurent::qint(5), ZLaurent::qint(3), quo));
}

TEST(QScale, SurdNormalForm) {
    // [2]^{1/2} [2]^{1/2} = [2]
    const QScale s = QScale::qint(2, 1) * QScale::qint(2, 1);
    EXPECT_EQ(s, QScale::qint(2, 2));
    EXPECT_EQ(s.to_surd(), QSurd(q_integer(2)));
    EXPECT_TRUE((s / s).is_one());
    EXPECT_EQ(QScale::qint(3, 1).surd_class(), std::vector<int>{3});
    EXPECT_NEAR(QScale::qint(3, -1).eval(kQ5), 0.5, 1e-14);
}

TEST(QIntMonomial, ToRationalHandlesNegativeExponents) {
    QIntMonomial m;
    m.mul_qint(4).mul_qint(2, -3);
    EXPECT_EQ(m.to_rational(), q_integer(4) / q_integer(2).pow(3));
    EXPECT_NEAR(m.eval(kQ5), 0.6, 1e-14);
}
