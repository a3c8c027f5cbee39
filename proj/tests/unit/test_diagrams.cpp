#include <gtest/gtest.h>

#include <random>
#include <set>

#include "tlcat/diagrams.hpp"

using namespace tlcat;

TEST(Catalan, FrozenValues) {
    const std::uint64_t want[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796};
    for (int n = 0; n <= 10; ++n) EXPECT_EQ(catalan(n), want[n]);
}

TEST(Enumerate, CountsAndUniqueness) {
    for (int n = 0; n <= 12; n += 2)
        for (int k = 0; k <= n; ++k) {
            const auto all = enumerate_diagrams(k, n - k);
            EXPECT_EQ(all.size(), catalan(n / 2));
            std::set<std::uint64_t> codes;
            for (const auto& d : all) codes.insert(d.code());
            EXPECT_EQ(codes.size(), all.size());
        }
    EXPECT_TRUE(enumerate_diagrams(1, 2).empty());
}

TEST(Compose, CapOnCupIsALoop) {
    const Composition c = compose_diagrams(TLDiagram::cap(), TLDiagram::cup());
    EXPECT_EQ(c.loops, 1);
    EXPECT_EQ(c.result.points(), 0);
}

TEST(Compose, SnakeIsIdentity) {
    // (cap x 1)(1 x cup) = 1_1
    const TLDiagram upper = tensor_diagrams(TLDiagram::cap(), TLDiagram::identity(1));
    const TLDiagram lower = tensor_diagrams(TLDiagram::identity(1), TLDiagram::cup());
    const Composition c = compose_diagrams(upper, lower);
    EXPECT_EQ(c.loops, 0);
    EXPECT_TRUE(c.result.is_identity());
}

TEST(Compose, GradingMismatchThrows) {
    EXPECT_THROW(compose_diagrams(TLDiagram::identity(2), TLDiagram::identity(3)), GradingError);
}

TEST(Diagram, ValidationRejectsCrossings) {
    EXPECT_THROW(TLDiagram(0, 4, {2, 3, 0, 1}), std::invalid_argument);
    EXPECT_NO_THROW(TLDiagram(0, 4, {3, 2, 1, 0}));
    EXPECT_FALSE(is_noncrossing(0, 4, {2, 3, 0, 1}));
}

TEST(Diagram, IdentityThroughStrands) {
    EXPECT_EQ(TLDiagram::identity(5).through_strands(), 5);
    EXPECT_EQ(TLDiagram::cup().through_strands(), 0);
    EXPECT_EQ(TLDiagram::identity(3).partner_list(), (std::vector<int>{4, 5, 6, 1, 2, 3}));
}

namespace {
TLDiagram pick(int k, int l, std::mt19937& rng) {
    const auto all = enumerate_diagrams(k, l);
    return all[std::uniform_int_distribution<size_t>(0, all.size() - 1)(rng)];
}
}  // namespace

TEST(DiagramProperty, AssociativityWithLoops) {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> sz(0, 3);
    for (int i = 0; i < 300; ++i) {
        const int par = static_cast<int>(rng() % 2);
        const int a = par + 2 * sz(rng), b = par + 2 * sz(rng), c = par + 2 * sz(rng), d = par + 2 * sz(rng);
        const TLDiagram x = pick(c, d, rng), y = pick(b, c, rng), z = pick(a, b, rng);
        const Composition xy = compose_diagrams(x, y), yz = compose_diagrams(y, z);
        const Composition l = compose_diagrams(xy.result, z), r = compose_diagrams(x, yz.result);
        ASSERT_EQ(l.result, r.result);
        ASSERT_EQ(xy.loops + l.loops, yz.loops + r.loops);
    }
}

TEST(DiagramProperty, AdjointReversesComposition) {
    std::mt19937 rng(4);
    std::uniform_int_distribution<int> sz(0, 3);
    for (int i = 0; i < 300; ++i) {
        const int par = static_cast<int>(rng() % 2);
        const int a = par + 2 * sz(rng), b = par + 2 * sz(rng), c = par + 2 * sz(rng);
        const TLDiagram x = pick(b, c, rng), y = pick(a, b, rng);
        const Composition xy = compose_diagrams(x, y);
        const Composition yx = compose_diagrams(adjoint_diagram(y), adjoint_diagram(x));
        ASSERT_EQ(adjoint_diagram(xy.result), yx.result);
        ASSERT_EQ(xy.loops, yx.loops);
        ASSERT_EQ(adjoint_diagram(adjoint_diagram(x)), x);
    }
}

TEST(DiagramProperty, CodeRoundTrip) {
    for (const auto& d : enumerate_diagrams(5, 7)) {
        EXPECT_EQ(TLDiagram::from_code(d.code()), d);
        std::vector<int> p = d.partner_list();
        for (int& x : p) --x;
        EXPECT_EQ(TLDiagram(5, 7, p), d);
    }
}
