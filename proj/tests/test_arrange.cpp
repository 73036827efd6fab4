#include <curvekit/arrange.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace curvekit;

namespace {

Dyadic dy(long m, long e = 0) { return Dyadic(Integer(m), e); }

// (x - cx)^2 + (y - cy)^2 - r2
BiPoly circle(long cx, long cy, long r2) {
    return BiPoly::from_terms({{1, 2, 0}, {-2 * cx, 1, 0}, {1, 0, 2}, {-2 * cy, 0, 1}, {cx * cx + cy * cy - r2, 0, 0}});
}

BiPoly line(long a, long b, long c) { return BiPoly::from_terms({{a, 1, 0}, {b, 0, 1}, {c, 0, 0}}); }

}  // namespace

TEST(CurvePair, TwoCirclesMeetOnOneLine) {
    CurvePairAnalysis a = curve_pair_analyze(circle(0, 0, 1), circle(1, 0, 1));
    auto ev = a.intersection_events();
    ASSERT_EQ(ev.size(), 1u);
    EXPECT_EQ(ev[0]->m, 2);
    EXPECT_TRUE(ev[0]->x.interval().contains(dy(1, -1)));
    AlgebraicNumber half = AlgebraicNumber::from_dyadic(dy(1, -1)), x = ev[0]->x;
    EXPECT_EQ(compare(x, half), 0);
    // both intersection points are shared entries
    size_t shared = 0;
    for (const auto& e : ev[0]->entries) shared += e.members.size() == 2;
    EXPECT_EQ(shared, 2u);
}

TEST(CurvePair, CircleAndDiagonal) {
    CurvePairAnalysis a = curve_pair_analyze(circle(0, 0, 1), line(1, -1, 0));
    auto ev = a.intersection_events();
    ASSERT_EQ(ev.size(), 2u);
    for (const auto* l : ev) EXPECT_EQ(l->m, 1);
    EXPECT_EQ(a.intersections.size(), 2u);
}

TEST(CurvePair, DisjointCircles) {
    CurvePairAnalysis a = curve_pair_analyze(circle(0, 0, 1), circle(3, 0, 1));
    EXPECT_TRUE(a.intersection_events().empty());
    EXPECT_TRUE(a.intersections.empty());
}

TEST(CurvePair, TangentCircles) {
    // concentric circles never meet; circles of radius 1 at distance 2 touch at (1, 0)
    CurvePairAnalysis a = curve_pair_analyze(circle(0, 0, 1), circle(0, 0, 4));
    EXPECT_TRUE(a.intersection_events().empty());
    CurvePairAnalysis b = curve_pair_analyze(circle(0, 0, 1), circle(2, 0, 1));
    auto ev = b.intersection_events();
    ASSERT_EQ(ev.size(), 1u);
    EXPECT_EQ(ev[0]->m, 1);
}

TEST(CurvePair, SymmetricUnderSwap) {
    std::vector<std::pair<BiPoly, BiPoly>> cases{{circle(0, 0, 1), circle(1, 0, 1)},
                                                 {circle(0, 0, 1), line(1, -1, 0)},
                                                 {BiPoly::from_terms({{1, 0, 2}, {-1, 3, 0}, {-1, 2, 0}}), line(0, 1, 0)}};
    for (const auto& [f, g] : cases) {
        CurvePairAnalysis a = curve_pair_analyze(f, g), b = curve_pair_analyze(g, f);
        ASSERT_EQ(a.lines.size(), b.lines.size());
        for (size_t k = 0; k < a.lines.size(); ++k) {
            const SweepLine &la = a.lines[k], &lb = b.lines[k];
            AlgebraicNumber xa = la.x, xb = lb.x;
            EXPECT_EQ(compare(xa, xb), 0);
            EXPECT_EQ(la.m, lb.m);
            EXPECT_EQ(la.critical[0], lb.critical[1]);
            EXPECT_EQ(la.critical[1], lb.critical[0]);
            ASSERT_EQ(la.entries.size(), lb.entries.size());
            for (size_t e = 0; e < la.entries.size(); ++e) {
                std::vector<std::pair<size_t, size_t>> ma = la.entries[e].members, mb;
                for (auto m : lb.entries[e].members) mb.emplace_back(1 - m.first, m.second);
                std::sort(ma.begin(), ma.end());
                std::sort(mb.begin(), mb.end());
                EXPECT_EQ(ma, mb);
            }
        }
    }
}

TEST(CurvePair, CommonFactorIsNamed) {
    BiPoly c = circle(0, 0, 1);
    try {
        curve_pair_analyze(c * line(1, 0, -5), c * line(0, 1, -5));
        FAIL() << "expected CommonFactorError";
    } catch (const CommonFactorError& e) {
        EXPECT_NE(std::string(e.what()).find("y"), std::string::npos);
        EXPECT_EQ(e.factor.total_degree(), 2);
    }
}

TEST(CurvePair, VerticalLinesAreRejected) {
    EXPECT_THROW(curve_pair_analyze(circle(0, 0, 1), line(1, 0, -3)), VerticalLineError);
}

TEST(CurvePair, EntriesAreOrderedAndDisjoint) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 4; ++t) {
        BiPoly f = oracle::random_biv(rng, 3, 3), g = oracle::random_biv(rng, 2, 3);
        if (f.deg_y() < 1 || g.deg_y() < 1 || common_factor(f, g)) continue;
        if (content_x(f).degree() >= 1 || content_x(g).degree() >= 1) continue;
        if (biv_gcd(f, f.deriv_y()).deg_y() >= 1 || biv_gcd(g, g.deriv_y()).deg_y() >= 1) continue;
        CurvePairAnalysis a = curve_pair_analyze(f, g);
        size_t total = 0;
        for (const auto& l : a.lines) {
            for (size_t e = 0; e + 1 < l.entries.size(); ++e) EXPECT_LT(l.entries[e].y.hi, l.entries[e + 1].y.lo);
            size_t shared = 0;
            for (const auto& e : l.entries) shared += e.members.size() - 1;
            EXPECT_EQ(static_cast<int>(shared), l.m);
            total += static_cast<size_t>(l.m);
        }
        EXPECT_EQ(total, a.intersections.size());
    }
}

TEST(Arrangement, OneCircle) {
    Arrangement a = arrangement_build({circle(0, 0, 1)});
    EXPECT_EQ(a.V, 2u);
    EXPECT_EQ(a.E, 2u);
    EXPECT_EQ(a.F, 2u);
    EXPECT_TRUE(a.euler_ok);
}

TEST(Arrangement, TwoCrossingCircles) {
    Arrangement a = arrangement_build({circle(0, 0, 1), circle(1, 0, 1)});
    EXPECT_EQ(a.V, 6u);
    EXPECT_EQ(a.E, 8u);
    EXPECT_EQ(a.F, 4u);  // three bounded faces and the outer one
    EXPECT_EQ(a.components, 1u);
    EXPECT_TRUE(a.euler_ok);
    EXPECT_EQ(static_cast<long>(a.V) - static_cast<long>(a.E) + static_cast<long>(a.F),
              1 + static_cast<long>(a.components));
}

TEST(Arrangement, CircleAndDisjointLine) {
    Arrangement a = arrangement_build({circle(0, 0, 1), line(0, 1, -3)});
    EXPECT_EQ(a.components, 2u);
    EXPECT_EQ(a.F, 3u);  // disc, below the line outside the disc, above the line
    EXPECT_TRUE(a.euler_ok);
}

TEST(Arrangement, CircleAndSecant) {
    Arrangement a = arrangement_build({circle(0, 0, 1), line(1, -1, 0)});
    EXPECT_EQ(a.F, 4u);
    EXPECT_TRUE(a.euler_ok);
    size_t shared = 0;
    for (const auto& v : a.vertices) shared += v.curves.size() == 2;
    EXPECT_EQ(shared, 2u);
}

TEST(Arrangement, ThreeLinesThroughOnePoint) {
    Arrangement a = arrangement_build({line(1, -1, 0), line(1, 1, 0), line(0, 1, 0)});
    ASSERT_EQ(a.V, 1u);
    EXPECT_EQ(a.vertices[0].curves.size(), 3u);
    EXPECT_EQ(a.F, 6u);
    EXPECT_TRUE(a.euler_ok);
}

TEST(Arrangement, HyperbolaAndLine) {
    // xy - 1 has four unbounded arcs, y = 0 is its asymptote
    Arrangement a = arrangement_build({BiPoly::from_terms({{1, 1, 1}, {-1, 0, 0}}), line(0, 1, 0)});
    EXPECT_EQ(a.F, 4u);
    EXPECT_TRUE(a.euler_ok);
    Arrangement b = arrangement_build({BiPoly::from_terms({{1, 1, 1}, {-1, 0, 0}}), line(1, -1, 0)});
    EXPECT_EQ(b.F, 6u);  // y = x cuts all three regions
    EXPECT_TRUE(b.euler_ok);
}

TEST(Arrangement, RandomFamiliesSatisfyEuler) {
    std::mt19937_64 rng(17);
    int built = 0;
    for (int t = 0; t < 12 && built < 4; ++t) {
        std::vector<BiPoly> cs;
        for (int i = 0; i < 2; ++i) cs.push_back(oracle::random_biv(rng, 2, 3));
        bool ok = true;
        for (auto& c : cs)
            if (c.deg_y() < 1 || content_x(c).degree() >= 1 || biv_gcd(c, c.deriv_y()).deg_y() >= 1) ok = false;
        if (!ok || common_factor(cs[0], cs[1])) continue;
        Arrangement a = arrangement_build(cs);
        EXPECT_TRUE(a.euler_ok);
        ++built;
    }
    EXPECT_GT(built, 0);
}
