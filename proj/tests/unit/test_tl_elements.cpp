#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tlcat/tl_elements.hpp"

using namespace tlcat;

namespace {
const double kQ8 = std::sqrt(2.0) - 1.0;  // q at delta^2 = 8

ExactElement random_element(int k, int l, std::mt19937& rng) {
    std::uniform_int_distribution<int> c(-3, 3), e(-2, 2);
    ExactElement x(k, l);
    for (const auto& d : enumerate_diagrams(k, l))
        if (rng() % 2) x = x + ExactElement::diagram(d).scaled(ZLaurent::monomial(c(rng), e(rng)));
    return x;
}
}  // namespace

TEST(ExactElement, LoopsEvaluateToDelta) {
    const ExactElement cap = ExactElement::diagram(TLDiagram::cap()), cup = ExactElement::diagram(TLDiagram::cup());
    EXPECT_EQ(cap * cup, ExactElement::identity(0).scaled(ZLaurent::qint(2)));
}

TEST(ExactElement, GradingMismatchThrows) {
    EXPECT_THROW(ExactElement::identity(2) + ExactElement::identity(3), GradingError);
    EXPECT_THROW(ExactElement::identity(2) * ExactElement::identity(3), GradingError);
}

TEST(ExactElement, SurdClassesDoNotMix) {
    ExactCalc c;
    const ExactElement a = c.identity(1).scaled(QScale::qint(2, 1));
    EXPECT_THROW(a + c.identity(1), SurdMismatch);
}

TEST(JonesWenzl, P2AndP3ClosedForms) {
    ExactCalc c;
    // p_2 = 1 - [2]^{-1} E_1
    const ExactElement e1 = c.diagram(capcup_diagram(2, 0));
    EXPECT_EQ(c.jw(2), c.identity(2) - e1.scaled(QScale::qint(2, -2)));
    // p_3 = 1 - [2]/[3](E_1 + E_2) + [3]^{-1}(E_1 E_2 + E_2 E_1)
    const ExactElement a = c.diagram(capcup_diagram(3, 0)), b = c.diagram(capcup_diagram(3, 1));
    const QScale s1 = QScale::qint(2, 2) * QScale::qint(3, -2), s2 = QScale::qint(3, -2);
    EXPECT_EQ(c.jw(3), c.identity(3) - (a + b).scaled(s1) + (a * b + b * a).scaled(s2));
}

TEST(JonesWenzl, CoefficientOfIdentityIsOne) {
    ExactCalc c;
    for (int y = 0; y <= 6; ++y) EXPECT_EQ(c.jw(y).coefficient(TLDiagram::identity(y)), QSurd(1L));
}

TEST(JonesWenzl, NumericMatchesExact) {
    ExactCalc ec;
    NumericCalc nc(NumericAlgebra{kQ8});
    for (int y = 1; y <= 6; ++y) EXPECT_LT(to_numeric(ec.jw(y), kQ8).distance(nc.jw(y)), 1e-12);
}

TEST(Isometries, TrIsIsometric) {
    ExactCalc c;
    for (int r = 0; r <= 5; ++r) EXPECT_EQ(adjoint(c.t(r)) * c.t(r), c.identity(0));
}

TEST(Isometries, T2Routes) {
    ExactCalc c;
    EXPECT_EQ(c.t2_from_m(), c.t(2));
    EXPECT_EQ(c.t2_one_sided(true), c.t(2));
    EXPECT_EQ(c.t2_one_sided(false), c.t(2));
    // with [3]^{+1/2} instead the two sides differ by [3]
    const ExactElement wrong = c.t2_one_sided(true).scaled(QScale::qint(3, 2));
    EXPECT_NE(wrong, c.t(2));
}

TEST(Intertwiners, PhiTriples) {
    EXPECT_EQ(phi_triple(1, Side::L, 2).n, 1);
    EXPECT_EQ(phi_triple(1, Side::L, 2).k, 3);
    EXPECT_EQ(phi_triple(1, Side::R, 2).n, 3);
    EXPECT_EQ(phi_triple(-1, Side::L, 2).k, 1);
    EXPECT_EQ(phi_triple(-1, Side::R, 2).n, 1);
    EXPECT_EQ(phi_triple(0, Side::R, 2).l, 2);
    EXPECT_THROW(phi_triple(0, Side::L, 0), std::exception);
}

TEST(Intertwiners, RhoGramRoutesAgree) {
    ExactCalc c;
    for (auto [n, k, l] : {std::tuple{1, 1, 0}, std::tuple{1, 1, 1}, std::tuple{1, 2, 2}, std::tuple{2, 1, 1}}) {
        const ExactElement cp = c.jw(2 * l).scaled(QScale::from_monomial(coupling_monomial(n, k, l)));
        EXPECT_EQ(rho_gram_full(c, n, k, l), cp);
        EXPECT_EQ(rho_gram_reduced(c, n, k, l), QScale::from_monomial(coupling_monomial(n, k, l)).to_surd());
    }
}

TEST(ElementProperty, AlgebraAxiomsOnRandomElements) {
    std::mt19937 rng(9);
    for (int i = 0; i < 10; ++i) {
        const ExactElement x = random_element(2, 4, rng), y = random_element(4, 2, rng), z = random_element(2, 4, rng);
        EXPECT_EQ((x * y) * z, x * (y * z));
        EXPECT_EQ(adjoint(x * y), adjoint(y) * adjoint(x));
        EXPECT_EQ((x + z) * y, x * y + z * y);
        EXPECT_EQ(tensor(x, y) * tensor(y, x), tensor(x * y, y * x));
    }
}

TEST(ElementProperty, JwKillsRandomCapcupCombinations) {
    ExactCalc c;
    std::mt19937 rng(10);
    for (int i = 0; i < 10; ++i) {
        const int y = 3 + static_cast<int>(rng() % 4);
        const ExactElement e = c.diagram(capcup_diagram(y, static_cast<int>(rng() % (y - 1))));
        const ExactElement x = random_element(y, y, rng);
        EXPECT_TRUE((c.jw(y) * e * x).is_zero());
    }
}

TEST(Serialization, RecordsAreOneBased) {
    const auto recs = ExactElement::identity(1).records();
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_EQ(recs[0].partners, (std::vector<int>{2, 1}));
}
