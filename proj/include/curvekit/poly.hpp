#pragma once

// Dense integer polynomials in one variable (IntPoly) and two variables
// (BiPoly, stored as a polynomial in y with IntPoly coefficients in x).

#include "arith.hpp"

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace curvekit {

class IntPoly {
public:
    IntPoly() = default;
    IntPoly(std::initializer_list<long> cs) {
        for (long v : cs) c_.emplace_back(v);
        trim();
    }
    explicit IntPoly(std::vector<Integer> cs) : c_(std::move(cs)) { trim(); }
    static IntPoly constant(const Integer& v) { return IntPoly(std::vector<Integer>{v}); }
    static IntPoly monomial(const Integer& v, int k) {
        std::vector<Integer> cs(static_cast<size_t>(k) + 1, Integer(0));
        cs[static_cast<size_t>(k)] = v;
        return IntPoly(std::move(cs));
    }
    static IntPoly x() { return monomial(1, 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const Integer& lc() const { return c_.back(); }
    const std::vector<Integer>& coeffs() const { return c_; }
    Integer coeff(int k) const {
        return (k < 0 || k > degree()) ? Integer(0) : c_[static_cast<size_t>(k)];
    }
    const Integer& operator[](size_t k) const { return c_[k]; }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<Integer> r(std::max(a.c_.size(), b.c_.size()), Integer(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return IntPoly(std::move(r));
    }
    IntPoly operator-() const {
        IntPoly r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Integer> r(a.c_.size() + b.c_.size() - 1, Integer(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return IntPoly(std::move(r));
    }
    friend IntPoly operator*(const Integer& s, const IntPoly& a) {
        if (s == 0) return {};
        IntPoly r = a;
        for (auto& v : r.c_) v *= s;
        return r;
    }
    IntPoly& operator+=(const IntPoly& o) { return *this = *this + o; }
    IntPoly& operator-=(const IntPoly& o) { return *this = *this - o; }
    IntPoly& operator*=(const IntPoly& o) { return *this = *this * o; }

    IntPoly pow(int e) const {
        IntPoly r = IntPoly::constant(1), b = *this;
        while (e > 0) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    IntPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Integer> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<unsigned long>(i);
        return IntPoly(std::move(r));
    }

    /// Divides every coefficient by d (must be exact).
    IntPoly div_scalar(const Integer& d) const {
        IntPoly r = *this;
        for (auto& v : r.c_) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
        return r;
    }

    Integer content() const {
        Integer g = 0;
        for (const auto& v : c_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
            if (g == 1) break;
        }
        return g;
    }
    /// Primitive part with positive leading coefficient.
    IntPoly primitive_part() const {
        if (is_zero()) return {};
        Integer g = content();
        if (lc() < 0) g = -g;
        return div_scalar(g);
    }

    Integer eval(const Integer& x) const {
        Integer r = 0;
        for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }
    Dyadic eval(const Dyadic& x) const {
        Dyadic r;
        for (size_t i = c_.size(); i-- > 0;) r = r * x + Dyadic(c_[i]);
        return r;
    }
    Rational eval(const Rational& x) const {
        Rational r = 0;
        for (size_t i = c_.size(); i-- > 0;) r = r * x + Rational(c_[i]);
        return r;
    }
    int sign_at(const Dyadic& x) const { return eval(x).sign(); }

    /// p(-x)
    IntPoly reflect() const {
        IntPoly r = *this;
        for (size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
        return r;
    }
    /// x^deg p(1/x)
    IntPoly reverse() const {
        std::vector<Integer> r(c_.rbegin(), c_.rend());
        return IntPoly(std::move(r));
    }
    /// p(x + 1)
    IntPoly shift_one() const {
        std::vector<Integer> r = c_;
        const size_t n = r.size();
        for (size_t i = 0; i + 1 < n; ++i)
            for (size_t j = n - 1; j-- > i;) r[j] += r[j + 1];
        return IntPoly(std::move(r));
    }

    /// Integer polynomial proportional (by a positive factor) to
    /// p(a + w t) where a = A 2^e, w = W 2^e.
    IntPoly affine_integer(const Integer& A, const Integer& W, long e) const {
        if (is_zero()) return {};
        const int d = degree();
        // p((A + W t) 2^e) * 2^{-e d} when e < 0, else exact scaling
        std::vector<Integer> r(static_cast<size_t>(d) + 1, Integer(0));
        IntPoly base(std::vector<Integer>{A, W});
        IntPoly acc = IntPoly::constant(1);
        for (int i = 0; i <= d; ++i) {
            if (c_[static_cast<size_t>(i)] != 0) {
                Integer s = c_[static_cast<size_t>(i)];
                long sh = e >= 0 ? e * i : -e * (d - i);
                s <<= static_cast<mp_bitcnt_t>(sh);
                for (size_t k = 0; k < acc.c_.size(); ++k) r[k] += s * acc.c_[k];
            }
            acc = acc * base;
        }
        return IntPoly(std::move(r)).primitive_abs();
    }

    /// Sign variations of the coefficient sequence (zeros skipped).
    int sign_variations() const {
        int v = 0, last = 0;
        for (const auto& a : c_) {
            int s = sgn(a);
            if (s == 0) continue;
            if (last != 0 && s != last) ++v;
            last = s;
        }
        return v;
    }

    /// Coefficients of p(m + t), exactly.
    std::vector<Dyadic> taylor_at(const Dyadic& m) const {
        std::vector<Dyadic> r;
        r.reserve(c_.size());
        for (const auto& v : c_) r.emplace_back(v);
        const size_t n = r.size();
        for (size_t i = 0; i + 1 < n; ++i)
            for (size_t j = n - 1; j-- > i;) r[j] += m * r[j + 1];
        return r;
    }

    /// Power of two strictly larger than the modulus of every complex root.
    Dyadic root_bound() const {
        if (degree() < 1) return Dyadic(1);
        Integer mx = 0;
        for (int i = 0; i < degree(); ++i) {
            Integer a = abs(c_[static_cast<size_t>(i)]);
            if (a > mx) mx = a;
        }
        Integer la = abs(lc());
        // 1 + mx/la < 2^k
        Integer q;
        mpz_cdiv_q(q.get_mpz_t(), mx.get_mpz_t(), la.get_mpz_t());
        q += 2;
        return Dyadic(1).mul_2exp(bit_length(q));
    }

    std::string to_string(char var = 'x') const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            const Integer& a = c_[static_cast<size_t>(i)];
            if (a == 0) continue;
            Integer aa = abs(a);
            if (!s.empty()) s += a < 0 ? " - " : " + ";
            else if (a < 0) s += "-";
            bool one = aa == 1 && i > 0;
            if (!one) s += aa.get_str();
            if (i > 0) {
                if (!one) s += "*";
                s += var;
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    IntPoly primitive_abs() const {
        if (is_zero()) return {};
        return div_scalar(content());
    }
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Integer> c_;
};

/// Pseudo-division: lc(b)^(deg a - deg b + 1) a = q b + r.
inline void pseudo_divide(const IntPoly& a, const IntPoly& b, IntPoly& q, IntPoly& r) {
    if (b.is_zero()) throw std::domain_error("pseudo division by zero");
    int db = b.degree();
    std::vector<Integer> rc = a.coeffs();
    int da = a.degree();
    if (da < db) {
        q = IntPoly();
        r = a;
        return;
    }
    std::vector<Integer> qc(static_cast<size_t>(da - db) + 1, Integer(0));
    const Integer& l = b.lc();
    for (int k = da; k >= db; --k) {
        Integer t = rc[static_cast<size_t>(k)];
        for (auto& v : qc) v *= l;
        qc[static_cast<size_t>(k - db)] += t;
        for (auto& v : rc) v *= l;
        for (int j = 0; j <= db; ++j) rc[static_cast<size_t>(k - db + j)] -= t * b[static_cast<size_t>(j)];
    }
    q = IntPoly(std::move(qc));
    r = IntPoly(std::move(rc));
}

/// Exact division over Z; returns false if b does not divide a in Z[x].
inline bool try_divide(const IntPoly& a, const IntPoly& b, IntPoly& q) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (a.is_zero()) {
        q = IntPoly();
        return true;
    }
    int da = a.degree(), db = b.degree();
    if (da < db) return false;
    std::vector<Integer> rc = a.coeffs();
    std::vector<Integer> qc(static_cast<size_t>(da - db) + 1);
    const Integer& l = b.lc();
    for (int k = da; k >= db; --k) {
        Integer& t = rc[static_cast<size_t>(k)];
        if (t == 0) {
            qc[static_cast<size_t>(k - db)] = 0;
            continue;
        }
        if (!mpz_divisible_p(t.get_mpz_t(), l.get_mpz_t())) return false;
        Integer c;
        mpz_divexact(c.get_mpz_t(), t.get_mpz_t(), l.get_mpz_t());
        qc[static_cast<size_t>(k - db)] = c;
        for (int j = 0; j <= db; ++j) rc[static_cast<size_t>(k - db + j)] -= c * b[static_cast<size_t>(j)];
    }
    for (const auto& v : rc)
        if (v != 0) return false;
    q = IntPoly(std::move(qc));
    return true;
}

inline IntPoly exact_divide(const IntPoly& a, const IntPoly& b) {
    IntPoly q;
    if (!try_divide(a, b, q)) throw std::logic_error("inexact polynomial division");
    return q;
}

/// Naive Horner interval evaluation with optional outward rounding.
inline Interval interval_eval_uni(const IntPoly& p, const Interval& x, long prec = 0) {
    if (p.is_zero()) return Interval(Dyadic());
    Interval r(Dyadic(p.lc()));
    for (int i = p.degree() - 1; i >= 0; --i) {
        r = r * x + Interval(Dyadic(p[static_cast<size_t>(i)]));
        if (prec > 0) r = r.round_out(prec);
    }
    return r;
}

/// Interval evaluation where coefficients are themselves intervals.
inline Interval interval_eval_coeffs(const std::vector<Interval>& c, const Interval& x, long prec = 0) {
    if (c.empty()) return Interval(Dyadic());
    Interval r = c.back();
    for (size_t i = c.size() - 1; i-- > 0;) {
        r = r * x + c[i];
        if (prec > 0) r = r.round_out(prec);
    }
    return r;
}

/// Bivariate integer polynomial sum_j c_j(x) y^j.
class BiPoly {
public:
    BiPoly() = default;
    explicit BiPoly(std::vector<IntPoly> cy) : c_(std::move(cy)) { trim(); }
    /// From a list of (coefficient, deg_x, deg_y) terms.
    static BiPoly from_terms(std::initializer_list<std::tuple<long, int, int>> terms) {
        BiPoly r;
        for (const auto& [v, i, j] : terms) r += term(Integer(v), i, j);
        return r;
    }
    static BiPoly term(const Integer& v, int dx, int dy) {
        std::vector<IntPoly> cy(static_cast<size_t>(dy) + 1);
        cy[static_cast<size_t>(dy)] = IntPoly::monomial(v, dx);
        return BiPoly(std::move(cy));
    }
    static BiPoly constant(const Integer& v) { return term(v, 0, 0); }
    static BiPoly from_x(const IntPoly& p) { return BiPoly(std::vector<IntPoly>{p}); }
    static BiPoly from_y(const IntPoly& p) {
        std::vector<IntPoly> cy;
        for (const auto& v : p.coeffs()) cy.push_back(IntPoly::constant(v));
        return BiPoly(std::move(cy));
    }
    static BiPoly var_x() { return term(1, 1, 0); }
    static BiPoly var_y() { return term(1, 0, 1); }

    int deg_y() const { return static_cast<int>(c_.size()) - 1; }
    int deg_x() const {
        int d = -1;
        for (const auto& p : c_) d = std::max(d, p.degree());
        return d;
    }
    int total_degree() const {
        int d = -1;
        for (size_t j = 0; j < c_.size(); ++j)
            if (!c_[j].is_zero()) d = std::max(d, c_[j].degree() + static_cast<int>(j));
        return d;
    }
    bool is_zero() const { return c_.empty(); }
    const std::vector<IntPoly>& ycoeffs() const { return c_; }
    IntPoly ycoeff(int j) const { return (j < 0 || j > deg_y()) ? IntPoly() : c_[static_cast<size_t>(j)]; }
    const IntPoly& lc_y() const { return c_.back(); }
    Integer coeff(int i, int j) const { return ycoeff(j).coeff(i); }

    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
        std::vector<IntPoly> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return BiPoly(std::move(r));
    }
    BiPoly operator-() const {
        BiPoly r = *this;
        for (auto& p : r.c_) p = -p;
        return r;
    }
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b) { return a + (-b); }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<IntPoly> r(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return BiPoly(std::move(r));
    }
    friend BiPoly operator*(const IntPoly& s, const BiPoly& a) {
        std::vector<IntPoly> r;
        for (const auto& p : a.c_) r.push_back(s * p);
        return BiPoly(std::move(r));
    }
    friend BiPoly operator*(const Integer& s, const BiPoly& a) { return IntPoly::constant(s) * a; }
    BiPoly& operator+=(const BiPoly& o) { return *this = *this + o; }
    BiPoly& operator-=(const BiPoly& o) { return *this = *this - o; }
    BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }

    BiPoly pow(int e) const {
        BiPoly r = constant(1), b = *this;
        while (e > 0) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    BiPoly deriv_y() const {
        std::vector<IntPoly> r;
        for (size_t j = 1; j < c_.size(); ++j) r.push_back(Integer(static_cast<unsigned long>(j)) * c_[j]);
        return BiPoly(std::move(r));
    }
    BiPoly deriv_x() const {
        std::vector<IntPoly> r;
        for (const auto& p : c_) r.push_back(p.derivative());
        return BiPoly(std::move(r));
    }
    /// Exchange the roles of x and y.
    BiPoly swap_xy() const {
        int dx = deg_x();
        std::vector<IntPoly> r;
        for (int i = 0; i <= dx; ++i) {
            std::vector<Integer> cs;
            for (const auto& p : c_) cs.push_back(p.coeff(i));
            r.emplace_back(std::move(cs));
        }
        return BiPoly(std::move(r));
    }

    /// Integer content (gcd of all coefficients).
    Integer int_content() const {
        Integer g = 0;
        for (const auto& p : c_) {
            Integer c = p.content();
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        }
        return g;
    }
    BiPoly div_scalar(const Integer& d) const {
        std::vector<IntPoly> r;
        for (const auto& p : c_) r.push_back(p.div_scalar(d));
        return BiPoly(std::move(r));
    }

    /// f(a, y) for integer a.
    IntPoly eval_x(const Integer& a) const {
        std::vector<Integer> r;
        for (const auto& p : c_) r.push_back(p.eval(a));
        return IntPoly(std::move(r));
    }
    /// Integer polynomial proportional (positive factor) to f(a, y), a dyadic.
    IntPoly eval_x_scaled(const Dyadic& a) const {
        if (is_zero()) return {};
        int dx = deg_x();
        long e = a.exponent();
        std::vector<Integer> r;
        for (const auto& p : c_) {
            if (e >= 0) {
                r.push_back(p.eval(Integer(a.mantissa() << static_cast<mp_bitcnt_t>(e))));
                continue;
            }
            // sum c_i m^i 2^{-e (dx - i)}
            Integer acc = 0;
            for (int i = p.degree(); i >= 0; --i) {
                acc = acc * a.mantissa() + (p[static_cast<size_t>(i)] << static_cast<mp_bitcnt_t>(-e * (dx - i)));
            }
            r.push_back(acc);
        }
        return IntPoly(std::move(r));
    }
    /// Exact rational value.
    Rational eval(const Rational& a, const Rational& b) const {
        Rational r = 0;
        for (size_t j = c_.size(); j-- > 0;) r = r * b + c_[j].eval(a);
        return r;
    }
    Dyadic eval(const Dyadic& a, const Dyadic& b) const {
        Dyadic r;
        for (size_t j = c_.size(); j-- > 0;) r = r * b + c_[j].eval(a);
        return r;
    }

    /// f(x + s y, y)
    BiPoly shear(const Integer& s) const {
        BiPoly sub = var_x() + s * var_y();
        BiPoly r;
        BiPoly ypow = constant(1);
        for (size_t j = 0; j < c_.size(); ++j) {
            const IntPoly& p = c_[j];
            BiPoly acc;
            for (int i = p.degree(); i >= 0; --i) acc = acc * sub + constant(p[static_cast<size_t>(i)]);
            r += acc * ypow;
            ypow *= var_y();
        }
        return r;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (int j = deg_y(); j >= 0; --j) {
            const IntPoly& p = c_[static_cast<size_t>(j)];
            for (int i = p.degree(); i >= 0; --i) {
                const Integer& a = p[static_cast<size_t>(i)];
                if (a == 0) continue;
                Integer aa = abs(a);
                if (!s.empty()) s += a < 0 ? " - " : " + ";
                else if (a < 0) s += "-";
                bool mono = i > 0 || j > 0;
                bool one = aa == 1 && mono;
                std::string t;
                if (!one) t += aa.get_str();
                auto add = [&t](const std::string& f) {
                    if (!t.empty()) t += "*";
                    t += f;
                };
                if (i > 0) add(i > 1 ? "x^" + std::to_string(i) : "x");
                if (j > 0) add(j > 1 ? "y^" + std::to_string(j) : "y");
                s += t;
            }
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<IntPoly> c_;
};

/// Interval enclosure of f over the box X x Y (Horner in y, then in x).
inline Interval interval_eval_biv(const BiPoly& f, const Interval& X, const Interval& Y, long prec = 0) {
    if (f.is_zero()) return Interval(Dyadic());
    std::vector<Interval> cy;
    for (const auto& p : f.ycoeffs()) cy.push_back(interval_eval_uni(p, X, prec));
    return interval_eval_coeffs(cy, Y, prec);
}

}  // namespace curvekit
