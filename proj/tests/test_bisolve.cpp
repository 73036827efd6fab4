#include <curvekit/bisolve.hpp>

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace curvekit;

namespace {

Dyadic dy(long m, long e = 0) { return Dyadic(Integer(m), e); }

BiPoly circle() { return BiPoly::from_terms({{1, 2, 0}, {1, 0, 2}, {-1, 0, 0}}); }

// g(x, q(x)) as a univariate polynomial
IntPoly substitute_y(const BiPoly& g, const IntPoly& q) {
    IntPoly r, qp{1};
    for (int j = 0; j <= g.deg_y(); ++j) {
        r = r + g.ycoeff(j) * qp;
        qp = qp * q;
    }
    return r;
}

void expect_same(const SolveResult& a, const SolveResult& b) {
    ASSERT_EQ(a.solutions.size(), b.solutions.size());
    for (size_t i = 0; i < a.solutions.size(); ++i) {
        EXPECT_TRUE(a.solutions[i].x.interval().overlaps(b.solutions[i].x.interval()));
        EXPECT_TRUE(a.solutions[i].y.interval().overlaps(b.solutions[i].y.interval()));
    }
}

}  // namespace

TEST(Bisolve, CircleAndDiagonal) {
    BiPoly line = BiPoly::from_terms({{1, 1, 0}, {-1, 0, 1}});
    SolveResult r = solve(circle(), line);
    ASSERT_EQ(r.solutions.size(), 2u);
    for (const auto& s : r.solutions) {
        double x = s.x.mid().to_double(), y = s.y.mid().to_double();
        EXPECT_NEAR(std::fabs(x), std::sqrt(0.5), 1e-9);
        EXPECT_NEAR(x, y, 1e-9);
        EXPECT_LE(s.x.width(), dy(1, -32));
    }
    EXPECT_LT(r.solutions[0].x.mid(), r.solutions[1].x.mid());
}

TEST(Bisolve, TangentSolutionIsFound) {
    // circle and y = 1 touch at (0, 1)
    BiPoly line = BiPoly::from_terms({{1, 0, 1}, {-1, 0, 0}});
    SolveResult r = solve(circle(), line);
    ASSERT_EQ(r.solutions.size(), 1u);
    EXPECT_TRUE(r.solutions[0].x.interval().contains(dy(0)));
    EXPECT_TRUE(r.solutions[0].y.interval().contains(dy(1)));
    EXPECT_EQ(r.solutions[0].x.multiplicity(), 2);
}

TEST(Bisolve, CurveAndPartialDerivative) {
    // circle and f_y = 2y: (+-1, 0)
    BiPoly fy = circle().deriv_y();
    for (FilterFlags fl : {FilterFlags{}, FilterFlags::none()}) {
        SolveOptions o;
        o.filters = fl;
        SolveResult r = solve(circle(), fy, o);
        ASSERT_EQ(r.solutions.size(), 2u);
        EXPECT_TRUE(r.solutions[0].x.interval().contains(dy(-1)));
        EXPECT_TRUE(r.solutions[1].x.interval().contains(dy(1)));
    }
}

TEST(Bisolve, RegionRestriction) {
    BiPoly line = BiPoly::from_terms({{1, 1, 0}, {-1, 0, 1}});
    SolveOptions o;
    o.region = Region{dy(0), dy(2), dy(0), dy(2)};
    SolveResult r = solve(circle(), line, o);
    ASSERT_EQ(r.solutions.size(), 1u);
    EXPECT_GT(r.solutions[0].x.lo(), dy(0));
}

TEST(Bisolve, NoRealSolutions) {
    // x^2 + y^2 + 1 has no real points
    BiPoly f = BiPoly::from_terms({{1, 2, 0}, {1, 0, 2}, {1, 0, 0}});
    EXPECT_TRUE(solve(f, BiPoly::from_terms({{1, 1, 0}})).solutions.empty());
}

TEST(Bisolve, CommonFactorIsRejected) {
    BiPoly f = circle() * BiPoly::from_terms({{1, 1, 0}, {-1, 0, 0}});
    BiPoly g = circle() * BiPoly::from_terms({{1, 0, 1}});
    EXPECT_THROW(solve(f, g), CommonFactorError);
    BiPoly vx = BiPoly::from_terms({{1, 1, 0}, {-2, 0, 0}});
    EXPECT_THROW(solve(vx * circle(), vx * BiPoly::from_terms({{1, 0, 1}, {1, 1, 0}})), CommonFactorError);
}

TEST(Bisolve, CofactorBoundsDominateTheDeterminant) {
    // the bound must be at least |res| / |f| style identity values on a point:
    // u f + v g = R, so |R(x0)| <= U |f| + V |g| at every point
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        BiPoly f = oracle::random_biv(rng, 3, 4), g = oracle::random_biv(rng, 3, 4);
        if (f.deg_y() < 1 || g.deg_y() < 1) continue;
        IntPoly R = biv_resultant_y(f, g);
        Dyadic x0 = dy(static_cast<long>(rng() % 9) - 4, -2), y0 = dy(static_cast<long>(rng() % 9) - 4, -2);
        auto [U, V] = detail::hadamard_uv(f, g, x0.abs(), y0.abs());
        Dyadic lhs = R.eval(x0).abs();
        EXPECT_LE(lhs, U * f.eval(x0, y0).abs() + V * g.eval(x0, y0).abs());
    }
}

TEST(Bisolve, IntervalDescartesExclusion) {
    // y^2 - 2 has no root in (0, 1), one in (1, 2)
    std::vector<Interval> c{Interval(dy(-2)), Interval(dy(0)), Interval(dy(1))};
    EXPECT_TRUE(detail::interval_descartes_empty(c, dy(0), dy(1)));
    EXPECT_FALSE(detail::interval_descartes_empty(c, dy(1), dy(2)));
    // the zero polynomial is never certified empty
    std::vector<Interval> z{Interval(dy(0)), Interval(dy(0))};
    EXPECT_FALSE(detail::interval_descartes_empty(z, dy(0), dy(1)));
}

TEST(Bisolve, KnownXOracle) {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 12; ++t) {
        IntPoly q = oracle::random_uni(rng, 1 + static_cast<int>(rng() % 4), 4);
        BiPoly f = BiPoly::from_y(IntPoly{0, 1}) - BiPoly::from_x(q);
        BiPoly g = oracle::random_biv(rng, 3, 3);
        if (g.deg_y() < 1) continue;
        IntPoly h = substitute_y(g, q);
        if (h.is_zero()) continue;
        std::vector<AlgebraicNumber> xs = real_roots(h);
        SolveOptions o;
        o.seed = static_cast<std::uint64_t>(t);
        SolveResult r = solve(f, g, o);
        ASSERT_EQ(r.solutions.size(), xs.size()) << f.to_string() << " ; " << g.to_string();
        for (size_t i = 0; i < xs.size(); ++i) {
            AlgebraicNumber a = r.solutions[i].x;
            EXPECT_EQ(compare(a, xs[i]), 0);
            Interval qy = interval_eval_uni(q, r.solutions[i].x.interval());
            EXPECT_TRUE(qy.overlaps(r.solutions[i].y.interval()));
        }
    }
}

TEST(Bisolve, FilterNeutrality) {
    std::mt19937_64 rng(8);
    std::vector<FilterFlags> sets{FilterFlags{}, FilterFlags::none(), {true, false, false, false},
                                  {false, true, false, false}, {false, false, true, false},
                                  {false, false, false, true}};
    for (int t = 0; t < 6; ++t) {
        BiPoly f = oracle::random_biv(rng, 3, 3), g = oracle::random_biv(rng, 3, 3);
        if (common_factor(f, g) || f.deg_y() + g.deg_y() == 0) continue;
        SolveOptions base;
        base.filters = FilterFlags::none();
        SolveResult ref = solve(f, g, base);
        for (const auto& fl : sets) {
            SolveOptions o;
            o.filters = fl;
            expect_same(ref, solve(f, g, o));
        }
    }
}

TEST(Bisolve, FiberRestriction) {
    // circle and 2y on the fiber x = 1
    SolveOptions o;
    o.fiber = AlgebraicNumber::from_dyadic(dy(1));
    SolveResult r = solve(circle(), circle().deriv_y(), o);
    ASSERT_EQ(r.solutions.size(), 1u);
    EXPECT_TRUE(r.solutions[0].x.interval().contains(dy(1)));
}
