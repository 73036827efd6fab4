#include <curvekit/upoly.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"

using namespace curvekit;

namespace {

Dyadic dy(long m, long e = 0) { return Dyadic(Integer(m), e); }

}  // namespace

TEST(Yun, Examples) {
    SquareFreeDecomposition d = yun_squarefree(IntPoly{2, -3, 0, 1});
    EXPECT_EQ(d.content, 1);
    ASSERT_EQ(d.factors.size(), 2u);
    EXPECT_EQ(d.factors[0].factor, (IntPoly{2, 1}));
    EXPECT_EQ(d.factors[0].multiplicity, 1);
    EXPECT_EQ(d.factors[1].factor, (IntPoly{-1, 1}));
    EXPECT_EQ(d.factors[1].multiplicity, 2);

    SquareFreeDecomposition e = yun_squarefree(IntPoly{-2, 0, 1});
    ASSERT_EQ(e.factors.size(), 1u);
    EXPECT_EQ(e.factors[0].multiplicity, 1);

    SquareFreeDecomposition f = yun_squarefree(IntPoly{0, 0, 4});
    EXPECT_EQ(f.content, 4);
    ASSERT_EQ(f.factors.size(), 1u);
    EXPECT_EQ(f.factors[0].factor, (IntPoly{0, 1}));
    EXPECT_EQ(f.factors[0].multiplicity, 2);
    EXPECT_THROW(yun_squarefree(IntPoly()), std::invalid_argument);
}

TEST(Yun, ReconstructionProperty) {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 200; ++t) {
        Integer c0 = oracle::random_integer(rng, 3);
        IntPoly p = IntPoly::constant(c0 == 0 ? Integer(1) : c0);
        int k = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < k; ++i) {
            IntPoly fac = oracle::random_uni(rng, 1 + static_cast<int>(rng() % 2), 3);
            p *= fac.pow(1 + static_cast<int>(rng() % 3));
        }
        SquareFreeDecomposition d = yun_squarefree(p);
        EXPECT_EQ(d.expand(), p);
        for (size_t i = 0; i < d.factors.size(); ++i) {
            EXPECT_EQ(int_gcd_uni(d.factors[i].factor, d.factors[i].factor.derivative()).degree(), 0);
            for (size_t j = i + 1; j < d.factors.size(); ++j)
                EXPECT_EQ(int_gcd_uni(d.factors[i].factor, d.factors[j].factor).degree(), 0);
        }
    }
}

TEST(Descartes, Examples) {
    auto r = descartes_isolate(IntPoly{-2, 0, 1});
    ASSERT_EQ(r.size(), 2u);
    EXPECT_LE(r[0].hi(), dy(0));
    EXPECT_GE(r[1].lo(), dy(0));
    for (const auto& a : r) EXPECT_LT(a.poly().sign_at(a.lo()) * a.poly().sign_at(a.hi()), 0);
    EXPECT_TRUE(descartes_isolate(IntPoly{1, 0, 1}).empty());
    auto c = descartes_isolate(oracle::from_roots({-1, 0, 1}));
    ASSERT_EQ(c.size(), 3u);
    for (int i = 0; i < 3; ++i) EXPECT_TRUE(c[static_cast<size_t>(i)].interval().contains(dy(i - 1)));
    EXPECT_THROW(descartes_isolate(IntPoly{1, 2, 1}), std::invalid_argument);
}

TEST(Descartes, PlantedIntegerRoots) {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 60; ++t) {
        std::vector<long> roots;
        int k = 1 + static_cast<int>(rng() % 7);
        while (static_cast<int>(roots.size()) < k) {
            long v = static_cast<long>(rng() % 41) - 20;
            if (std::find(roots.begin(), roots.end(), v) == roots.end()) roots.push_back(v);
        }
        IntPoly p = oracle::from_roots(roots) * IntPoly{1 + static_cast<long>(rng() % 5), 0, 1};
        auto iso = descartes_isolate(p);
        ASSERT_EQ(iso.size(), roots.size());
        for (long v : roots) {
            int hits = 0;
            for (const auto& a : iso) hits += a.interval().contains(dy(v));
            EXPECT_EQ(hits, 1);
        }
        for (size_t i = 0; i + 1 < iso.size(); ++i) EXPECT_LE(iso[i].hi(), iso[i + 1].lo());
    }
}

TEST(Qir, SqrtTwo) {
    AlgebraicNumber a(IntPoly{-2, 0, 1}, dy(1), dy(2));
    a.refine_bits(20);
    EXPECT_LE(a.width(), dy(1, -20));
    EXPECT_LT(std::abs(a.approx() - std::sqrt(2.0)), 1e-6);
    // invariant: sign change persists
    EXPECT_LT(a.poly().sign_at(a.lo()) * a.poly().sign_at(a.hi()), 0);
    a.refine_bits(300);
    EXPECT_LE(a.width(), dy(1, -300));
    Rational lo = a.lo().to_rational(), hi = a.hi().to_rational();
    EXPECT_LT(lo * lo, 2);
    EXPECT_GT(hi * hi, 2);
}

TEST(Qir, RationalRootAndIdempotence) {
    AlgebraicNumber h(IntPoly{-1, 2}, dy(0), dy(1));
    h.refine_bits(40);
    EXPECT_TRUE(h.interval().contains(dy(1, -1)));
    AlgebraicNumber s(IntPoly{-2, 0, 1}, dy(1), dy(2));
    s.refine_to(dy(4));
    EXPECT_EQ(s.lo(), dy(1));
    EXPECT_EQ(s.hi(), dy(2));
}

TEST(TkTest, Examples) {
    EXPECT_TRUE(tk_test(IntPoly{0, 1}, dy(1), dy(1, -1), Rational(1)));
    EXPECT_FALSE(tk_test(IntPoly{0, 1}, dy(0), dy(1, -3), Rational(1)));
    EXPECT_TRUE(tk_test(IntPoly{-2, 0, 1}, dy(0), dy(1), Rational(1)));
}

TEST(TkTest, NeverCertifiesDiscWithKnownRoot) {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 300; ++t) {
        std::vector<long> roots;
        for (int i = 0; i < 4; ++i) roots.push_back(static_cast<long>(rng() % 21) - 10);
        IntPoly p = oracle::from_roots(roots);
        Dyadic m(Integer(static_cast<long>(rng() % 161) - 80), -3);
        Dyadic r(Integer(1 + static_cast<long>(rng() % 40)), -3);
        if (tk_test(p, m, r, Rational(1))) {
            for (long v : roots) EXPECT_GT((dy(v) - m).abs(), r);
        }
    }
}

TEST(AlgebraicNumber, CompareAndSign) {
    auto r2 = descartes_isolate(IntPoly{-2, 0, 1});
    auto r8 = descartes_isolate(IntPoly{-8, 0, 0, 0, 1});  // x^4 - 8: root 8^(1/4) = sqrt(2)*2^(1/4)
    auto r2b = descartes_isolate(IntPoly{-4, 0, 0, 0, 1});  // x^4 - 4 has roots +-sqrt(2)
    AlgebraicNumber a = r2[1], b = r2b[1], c = r8[1];
    EXPECT_EQ(compare(a, b), 0);
    EXPECT_EQ(compare(a, c), -1);
    EXPECT_EQ(compare(c, b), 1);
    AlgebraicNumber a2 = r2[1];
    EXPECT_EQ(sign_at(IntPoly{-2, 0, 1}, a2), 0);
    EXPECT_EQ(sign_at(IntPoly{-1, 1}, a2), 1);
    EXPECT_EQ(sign_at(IntPoly{-3, 2}, a2), -1);
    AlgebraicNumber e = AlgebraicNumber::from_dyadic(dy(3, -1));
    AlgebraicNumber f = descartes_isolate(IntPoly{-3, 2})[0];
    EXPECT_EQ(compare(e, f), 0);
}

TEST(RealRoots, MultiplicitiesAndDisjointness) {
    // (x-1)^2 (x+2) (x^2-2)^3
    IntPoly p = oracle::from_roots({1, 1, -2}) * IntPoly{-2, 0, 1}.pow(3);
    auto rs = real_roots(p);
    ASSERT_EQ(rs.size(), 4u);
    std::vector<int> mults;
    for (auto& r : rs) mults.push_back(r.multiplicity());
    EXPECT_EQ(mults, (std::vector<int>{1, 3, 2, 3}));
    for (size_t i = 0; i + 1 < rs.size(); ++i) EXPECT_LT(rs[i].hi(), rs[i + 1].lo());
}
