#pragma once

// Univariate algebra over Z: square-free factorization, Descartes root
// isolation, real algebraic numbers with bisection/QIR refinement, exact
// sign and comparison queries, and the T_K disc exclusion test.

#include "modpoly.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace curvekit {

struct SquareFreeFactor {
    IntPoly factor;  // primitive, positive leading coefficient, degree >= 1
    int multiplicity = 1;
};

struct SquareFreeDecomposition {
    Integer content;
    std::vector<SquareFreeFactor> factors;

    IntPoly expand() const {
        IntPoly r = IntPoly::constant(content);
        for (const auto& f : factors) r *= f.factor.pow(f.multiplicity);
        return r;
    }
    /// Product of the distinct factors.
    IntPoly squarefree_part() const {
        IntPoly r = IntPoly::constant(1);
        for (const auto& f : factors) r *= f.factor;
        return r;
    }
};

/// Yun's algorithm over Z (primitive gcds keep all quotients integral).
inline SquareFreeDecomposition yun_squarefree(const IntPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("square-free decomposition of the zero polynomial");
    SquareFreeDecomposition out;
    IntPoly a = p.primitive_part();
    if (a.degree() >= 1) {
        IntPoly da = a.derivative();
        IntPoly g = int_gcd_uni(a, da);
        IntPoly b = exact_divide(a, g);
        IntPoly c = exact_divide(da, g);
        IntPoly d = c - b.derivative();
        int i = 1;
        while (b.degree() >= 1) {
            IntPoly ai = d.is_zero() ? b : int_gcd_uni(b, d);
            if (ai.degree() >= 1) out.factors.push_back({ai, i});
            b = exact_divide(b, ai);
            c = d.is_zero() ? IntPoly() : exact_divide(d, ai);
            d = c - b.derivative();
            ++i;
        }
    }
    IntPoly prod = IntPoly::constant(1);
    for (const auto& f : out.factors) prod *= f.factor.pow(f.multiplicity);
    out.content = p.lc() / prod.lc();
    return out;
}

/// Real root of a square-free integer polynomial given by an isolating
/// interval. Either lo == hi (the root is that dyadic) or the open interval
/// (lo, hi) contains exactly one root and the polynomial has opposite,
/// nonzero signs at lo and hi.
class AlgebraicNumber {
public:
    AlgebraicNumber() = default;
    AlgebraicNumber(IntPoly poly, Dyadic lo, Dyadic hi, int multiplicity = 1)
        : poly_(std::move(poly)), lo_(std::move(lo)), hi_(std::move(hi)), mult_(multiplicity) {
        if (poly_.degree() < 1) throw std::invalid_argument("algebraic number needs a nonconstant polynomial");
        if (hi_ < lo_) throw std::invalid_argument("isolating interval with lo > hi");
        if (lo_ == hi_) {
            if (poly_.sign_at(lo_) != 0) throw std::invalid_argument("point interval is not a root");
        } else {
            sign_lo_ = poly_.sign_at(lo_);
            int shi = poly_.sign_at(hi_);
            if (sign_lo_ == 0 || shi == 0 || sign_lo_ == shi)
                throw std::invalid_argument("interval lacks a strict sign change");
        }
    }
    static AlgebraicNumber from_dyadic(const Dyadic& v) {
        // 2^k x - m for v = m 2^-k
        IntPoly p;
        if (v.exponent() >= 0) {
            p = IntPoly(std::vector<Integer>{-v.floor(), Integer(1)});
        } else {
            p = IntPoly(std::vector<Integer>{-v.mantissa(), Integer(1) << static_cast<mp_bitcnt_t>(-v.exponent())});
        }
        return AlgebraicNumber(p, v, v);
    }

    const IntPoly& poly() const { return poly_; }
    const Dyadic& lo() const { return lo_; }
    const Dyadic& hi() const { return hi_; }
    int multiplicity() const { return mult_; }
    void set_multiplicity(int m) { mult_ = m; }
    bool is_exact() const { return lo_ == hi_; }
    Interval interval() const { return {lo_, hi_}; }
    Dyadic width() const { return hi_ - lo_; }
    Dyadic mid() const { return (lo_ + hi_).half(); }
    double approx() const { return mid().to_double(); }

    /// One bisection step.
    void bisect() {
        if (is_exact()) return;
        Dyadic m = mid();
        int s = poly_.sign_at(m);
        if (s == 0) {
            lo_ = hi_ = m;
        } else if (s == sign_lo_) {
            lo_ = m;
        } else {
            hi_ = m;
        }
    }

    /// Quadratic interval refinement until width <= w.
    void refine_to(const Dyadic& w) {
        while (!is_exact() && width() > w) qir_step();
    }
    /// Refine until the width is at most 2^-bits.
    void refine_bits(long bits) { refine_to(Dyadic(1).mul_2exp(-bits)); }

    /// One QIR step (Abbott): try to shrink by the factor N using a secant
    /// guess; fall back to bisection and N = sqrt(N) on failure.
    void qir_step() {
        if (is_exact()) return;
        if (qir_log_n_ <= 1) {
            bisect();
            qir_log_n_ = 2;
            return;
        }
        const long k = qir_log_n_;
        Dyadic fa = poly_.eval(lo_), fb = poly_.eval(hi_);
        Rational lam = (fa.to_rational()) / (fa - fb).to_rational();
        // j = round(N lam)
        Rational t = lam * Rational(Integer(1) << static_cast<mp_bitcnt_t>(k));
        Integer j = (t.get_num() * 2 + t.get_den()) / (2 * t.get_den());
        Integer N = Integer(1) << static_cast<mp_bitcnt_t>(k);
        if (j < 0) j = 0;
        if (j > N) j = N;
        Dyadic w = width().mul_2exp(-k);
        Dyadic ms = lo_ + w * Dyadic(j);
        auto try_interval = [&](const Dyadic& a, const Dyadic& b) -> bool {
            if (a < lo_ || b > hi_) return false;
            int sa = a == lo_ ? sign_lo_ : poly_.sign_at(a);
            int sb = b == hi_ ? -sign_lo_ : poly_.sign_at(b);
            if (sa == 0) {
                lo_ = hi_ = a;
                return true;
            }
            if (sb == 0) {
                lo_ = hi_ = b;
                return true;
            }
            if (sa == sb) return false;
            lo_ = a;
            hi_ = b;
            sign_lo_ = sa;
            return true;
        };
        int sm = (ms == lo_) ? sign_lo_ : (ms == hi_ ? -sign_lo_ : poly_.sign_at(ms));
        bool ok = false;
        if (sm == 0) {
            lo_ = hi_ = ms;
            return;
        }
        if (sm == sign_lo_) {
            ok = try_interval(ms, ms + w);
        } else {
            ok = try_interval(ms - w, ms);
        }
        if (ok) {
            qir_log_n_ = std::min<long>(2 * k, 1L << 12);
        } else {
            bisect();
            qir_log_n_ = std::max<long>(1, k / 2);
        }
    }

    /// Replace the isolating interval by a subinterval [a, b] known to contain
    /// the root (caller guarantees).
    void shrink_to(const Dyadic& a, const Dyadic& b) {
        if (is_exact()) return;
        Dyadic na = max(a, lo_), nb = min(b, hi_);
        if (!(na < nb)) {
            if (na == nb && poly_.sign_at(na) == 0) {
                lo_ = hi_ = na;
            }
            return;
        }
        int sa = poly_.sign_at(na), sb = poly_.sign_at(nb);
        if (sa == 0) {
            lo_ = hi_ = na;
        } else if (sb == 0) {
            lo_ = hi_ = nb;
        } else if (sa != sb) {
            lo_ = na;
            hi_ = nb;
            sign_lo_ = sa;
        }
    }

private:
    IntPoly poly_;
    Dyadic lo_, hi_;
    int mult_ = 1;
    int sign_lo_ = 0;
    long qir_log_n_ = 2;
};

namespace detail {

/// q(s t) scaled to integers, s = S 2^-j.
inline IntPoly scale_left(const IntPoly& q, const Integer& S, long j) { return q.affine_integer(0, S, -j); }

inline int descartes_count(const IntPoly& q) { return q.reverse().shift_one().sign_variations(); }

/// Sign of q(S 2^-j) (q integer polynomial).
inline int sign_at_fraction(const IntPoly& q, const Integer& S, long j) {
    return q.sign_at(Dyadic(S, -j));
}

}  // namespace detail

/// Descartes isolation of the real roots of a square-free polynomial, sorted
/// ascending. Endpoints are never roots; multiplicity is set to `mult`.
inline std::vector<AlgebraicNumber> descartes_isolate(const IntPoly& p_in, int mult = 1) {
    if (p_in.is_zero()) throw std::invalid_argument("isolation of the zero polynomial");
    IntPoly p = p_in.primitive_part();
    if (p.degree() < 1) return {};
    {
        IntPoly g = int_gcd_uni(p, p.derivative());
        if (g.degree() > 0) throw std::invalid_argument("descartes_isolate: polynomial is not square-free");
    }
    struct Node {
        Dyadic a, b;
        IntPoly q;
    };
    std::vector<AlgebraicNumber> out;
    Dyadic B = p.root_bound();
    Dyadic w = B + B;
    std::vector<Node> stack;
    {
        Dyadic a = -B;
        long e = std::min(a.exponent(), w.exponent());
        Integer A = a.mantissa() << static_cast<mp_bitcnt_t>(a.exponent() - e);
        Integer W = w.mantissa() << static_cast<mp_bitcnt_t>(w.exponent() - e);
        stack.push_back({a, B, p.affine_integer(A, W, e)});
    }
    // candidate split fractions (numerator over 16)
    static const long kSplits[] = {8, 7, 9, 6, 10, 5, 11};
    while (!stack.empty()) {
        Node nd = std::move(stack.back());
        stack.pop_back();
        int v = detail::descartes_count(nd.q);
        if (v == 0) continue;
        if (v == 1) {
            out.emplace_back(p, nd.a, nd.b, mult);
            continue;
        }
        Integer S;
        long j = 4;
        bool found = false;
        for (long num : kSplits) {
            if (detail::sign_at_fraction(nd.q, Integer(num), j) != 0) {
                S = num;
                found = true;
                break;
            }
        }
        if (!found) {
            // all candidates are roots: use finer fractions
            for (long jj = 5; !found; ++jj) {
                Integer cand = (Integer(1) << static_cast<mp_bitcnt_t>(jj - 1)) + 1;
                if (detail::sign_at_fraction(nd.q, cand, jj) != 0) {
                    S = cand;
                    j = jj;
                    found = true;
                }
            }
        }
        Integer den = Integer(1) << static_cast<mp_bitcnt_t>(j);
        Dyadic s(S, -j);
        Dyadic m = nd.a + (nd.b - nd.a) * s;
        IntPoly ql = detail::scale_left(nd.q, S, j);
        IntPoly qr = nd.q.affine_integer(S, den - S, -j);
        stack.push_back({m, nd.b, std::move(qr)});
        stack.push_back({nd.a, m, std::move(ql)});
    }
    std::sort(out.begin(), out.end(), [](const AlgebraicNumber& x, const AlgebraicNumber& y) { return x.lo() < y.lo(); });
    return out;
}

/// Isolate real roots of every factor of a square-free decomposition; roots
/// carry their multiplicity, result sorted ascending with pairwise disjoint
/// intervals.
inline std::vector<AlgebraicNumber> isolate_decomposition(const SquareFreeDecomposition& d);

/// Real roots (distinct) of an arbitrary nonzero polynomial with
/// multiplicities.
inline std::vector<AlgebraicNumber> real_roots(const IntPoly& p) {
    if (p.degree() < 1) return {};
    return isolate_decomposition(yun_squarefree(p));
}

/// T_K test: |p(m)| - K sum_{k>=1} |p^(k)(m)/k!| r^k > 0, evaluated exactly.
inline bool tk_test(const IntPoly& p, const Dyadic& m, const Dyadic& r, const Rational& K) {
    if (r.sign() < 0) throw std::invalid_argument("tk_test: negative radius");
    std::vector<Dyadic> c = p.taylor_at(m);
    if (c.empty()) return false;
    Dyadic tail;
    Dyadic rk(1);
    for (size_t k = 1; k < c.size(); ++k) {
        rk *= r;
        tail += c[k].abs() * rk;
    }
    // den |c0| - num tail > 0
    Dyadic lhs = c[0].abs() * Dyadic(K.get_den()) - tail * Dyadic(K.get_num());
    return lhs.sign() > 0;
}

/// Exact test whether q(alpha) = 0.
inline bool is_root_of(const IntPoly& q, const AlgebraicNumber& a) {
    if (q.is_zero()) return true;
    if (q.degree() < 1) return false;
    if (a.is_exact()) return q.sign_at(a.lo()) == 0;
    IntPoly g = int_gcd_uni(q, a.poly());
    if (g.degree() < 1) return false;
    return g.sign_at(a.lo()) * g.sign_at(a.hi()) < 0;
}

/// Exact sign of q(alpha); refines alpha as needed.
inline int sign_at(const IntPoly& q, AlgebraicNumber& a) {
    if (q.is_zero()) return 0;
    if (q.degree() < 1) return sgn(q.lc());
    if (a.is_exact()) return q.sign_at(a.lo());
    Interval v = interval_eval_uni(q, a.interval());
    if (v.sign() != 0) return v.sign();
    if (is_root_of(q, a)) return 0;
    while (true) {
        a.qir_step();
        v = interval_eval_uni(q, a.interval());
        if (v.sign() != 0) return v.sign();
        if (a.is_exact()) return q.sign_at(a.lo());
    }
}

/// Exact comparison of two real algebraic numbers; refines both as needed.
inline int compare(AlgebraicNumber& a, AlgebraicNumber& b) {
    if (a.is_exact() && b.is_exact()) return cmp(a.lo(), b.lo());
    auto disjoint = [&]() -> int {
        if (a.hi() < b.lo()) return -1;
        if (b.hi() < a.lo()) return 1;
        // a shared endpoint belongs to at most one of the two numbers
        bool both = a.is_exact() && b.is_exact();
        if (a.hi() == b.lo() && !both) return -1;
        if (b.hi() == a.lo() && !both) return 1;
        return 0;
    };
    if (int d = disjoint()) return d;
    if (a.is_exact()) {
        if (is_root_of(b.poly(), a) && b.interval().contains(a.lo())) return 0;
    } else if (b.is_exact()) {
        if (is_root_of(a.poly(), b) && a.interval().contains(b.lo())) return 0;
    } else {
        IntPoly g = int_gcd_uni(a.poly(), b.poly());
        if (g.degree() >= 1 && is_root_of(g, a) && is_root_of(g, b)) {
            // equal iff the hull holds a single root of g
            while (true) {
                if (int d = disjoint()) return d;
                Dyadic lo = min(a.lo(), b.lo()), hi = max(a.hi(), b.hi());
                Integer A, W;
                long e = std::min({lo.exponent(), (hi - lo).exponent()});
                A = lo.mantissa() << static_cast<mp_bitcnt_t>(lo.exponent() - e);
                Dyadic w = hi - lo;
                W = w.mantissa() << static_cast<mp_bitcnt_t>(w.exponent() - e);
                IntPoly q = g.affine_integer(A, W, e);
                if (detail::descartes_count(q) == 1) return 0;
                a.qir_step();
                b.qir_step();
            }
        }
    }
    while (true) {
        a.qir_step();
        b.qir_step();
        if (int d = disjoint()) return d;
        if (a.is_exact() && b.is_exact()) return cmp(a.lo(), b.lo());
        if (a.is_exact() && b.interval().contains(a.lo()) && is_root_of(b.poly(), a)) return 0;
        if (b.is_exact() && a.interval().contains(b.lo()) && is_root_of(a.poly(), b)) return 0;
    }
}

inline std::vector<AlgebraicNumber> isolate_decomposition(const SquareFreeDecomposition& d) {
    std::vector<AlgebraicNumber> all;
    for (const auto& f : d.factors) {
        auto rs = descartes_isolate(f.factor, f.multiplicity);
        all.insert(all.end(), rs.begin(), rs.end());
    }
    // roots of distinct factors are distinct; refine until intervals are disjoint
    auto by_lo = [](const AlgebraicNumber& x, const AlgebraicNumber& y) { return x.lo() < y.lo(); };
    std::sort(all.begin(), all.end(), by_lo);
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < all.size(); ++i) {
            while (!(all[i].hi() < all[i + 1].lo()) && !(all[i + 1].hi() < all[i].lo())) {
                all[i].qir_step();
                all[i + 1].qir_step();
                changed = true;
            }
        }
        if (changed) std::sort(all.begin(), all.end(), by_lo);
    }
    return all;
}

/// Shortest dyadic strictly between two disjoint algebraic numbers a < b.
inline Dyadic separator_between(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (a.hi() < b.lo()) return simplest_between(a.hi(), b.lo());
    // touching open intervals share an endpoint that is not a root of either
    if (a.hi() == b.lo() && !a.is_exact() && !b.is_exact()) return a.hi();
    throw std::logic_error("separator_between: intervals overlap");
}

}  // namespace curvekit
