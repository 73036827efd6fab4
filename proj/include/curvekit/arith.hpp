#pragma once

// Exact integers, rationals and dyadic numbers; real intervals and complex
// boxes/discs with dyadic endpoints.
//
// Every operation that rounds takes an explicit precision (number of
// significant mantissa bits). A precision of 0 means "exact".

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace curvekit {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline long bit_length(const Integer& v) {
    return v == 0 ? 0 : static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

/// Value mantissa * 2^exponent. Canonical form: odd mantissa, or zero
/// mantissa with exponent 0.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(long v) : mant_(v) { normalize(); }  // NOLINT(implicit)
    Dyadic(const Integer& m, long e = 0) : mant_(m), exp_(e) { normalize(); }

    static Dyadic from_double(double d) {
        if (!std::isfinite(d)) throw std::domain_error("non-finite double");
        int e = 0;
        double fr = std::frexp(d, &e);
        // 53 bits of mantissa are exact.
        auto m = static_cast<std::int64_t>(std::ldexp(fr, 53));
        Integer mi;
        mpz_set_si(mi.get_mpz_t(), static_cast<long>(m));
        return Dyadic(mi, e - 53);
    }

    const Integer& mantissa() const { return mant_; }
    long exponent() const { return exp_; }
    int sign() const { return sgn(mant_); }
    bool is_zero() const { return mant_ == 0; }

    /// floor(log2|v|); undefined for zero (returns a very small number).
    long msb() const {
        if (is_zero()) return -(1L << 40);
        return bit_length(mant_) - 1 + exp_;
    }

    Rational to_rational() const {
        Rational q(mant_);
        if (exp_ >= 0) {
            mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(exp_));
        } else {
            mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-exp_));
        }
        return q;
    }

    double to_double() const {
        if (is_zero()) return 0.0;
        long bl = bit_length(mant_);
        if (bl > 60) {
            Integer t = mant_ >> static_cast<mp_bitcnt_t>(bl - 60);
            return std::ldexp(t.get_d(), static_cast<int>(std::clamp<long>(exp_ + bl - 60, -100000, 100000)));
        }
        return std::ldexp(mant_.get_d(), static_cast<int>(std::clamp<long>(exp_, -100000, 100000)));
    }

    std::string to_string() const {
        return mant_.get_str() + "*2^" + std::to_string(exp_);
    }

    Dyadic operator-() const { Dyadic r = *this; r.mant_ = -r.mant_; return r; }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.exp_ <= b.exp_) {
            Integer t = b.mant_ << static_cast<mp_bitcnt_t>(b.exp_ - a.exp_);
            return Dyadic(a.mant_ + t, a.exp_);
        }
        Integer t = a.mant_ << static_cast<mp_bitcnt_t>(a.exp_ - b.exp_);
        return Dyadic(t + b.mant_, b.exp_);
    }
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
        return Dyadic(a.mant_ * b.mant_, a.exp_ + b.exp_);
    }
    Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
    Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
    Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

    Dyadic mul_2exp(long k) const {
        Dyadic r = *this;
        if (!r.is_zero()) r.exp_ += k;
        return r;
    }
    Dyadic half() const { return mul_2exp(-1); }

    friend int cmp(const Dyadic& a, const Dyadic& b) {
        Dyadic d = a - b;
        return d.sign();
    }
    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.exp_ == b.exp_ && a.mant_ == b.mant_;
    }
    friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
    friend bool operator<(const Dyadic& a, const Dyadic& b) { return cmp(a, b) < 0; }
    friend bool operator>(const Dyadic& a, const Dyadic& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) >= 0; }

    Dyadic abs() const { return sign() < 0 ? -*this : *this; }

    /// Rounds toward -inf keeping at most prec significant bits (prec 0: exact).
    Dyadic round_down(long prec) const { return round_dir(prec, false); }
    /// Rounds toward +inf keeping at most prec significant bits.
    Dyadic round_up(long prec) const { return round_dir(prec, true); }
    /// Round to nearest-ish (toward zero), for heuristic numerics.
    Dyadic round(long prec) const { return sign() >= 0 ? round_down(prec) : round_up(prec); }

    /// floor(v * 2^k) / 2^k
    Dyadic floor_at(long k) const {
        if (is_zero() || exp_ >= -k) return *this;
        Integer t;
        mpz_fdiv_q_2exp(t.get_mpz_t(), mant_.get_mpz_t(), static_cast<mp_bitcnt_t>(-k - exp_));
        return Dyadic(t, -k);
    }
    Dyadic ceil_at(long k) const {
        if (is_zero() || exp_ >= -k) return *this;
        Integer t;
        mpz_cdiv_q_2exp(t.get_mpz_t(), mant_.get_mpz_t(), static_cast<mp_bitcnt_t>(-k - exp_));
        return Dyadic(t, -k);
    }

    Integer floor() const {
        if (exp_ >= 0) return mant_ << static_cast<mp_bitcnt_t>(exp_);
        Integer t;
        mpz_fdiv_q_2exp(t.get_mpz_t(), mant_.get_mpz_t(), static_cast<mp_bitcnt_t>(-exp_));
        return t;
    }
    Integer ceil() const {
        if (exp_ >= 0) return mant_ << static_cast<mp_bitcnt_t>(exp_);
        Integer t;
        mpz_cdiv_q_2exp(t.get_mpz_t(), mant_.get_mpz_t(), static_cast<mp_bitcnt_t>(-exp_));
        return t;
    }

    /// Largest dyadic with prec bits that is <= q (prec >= 1).
    static Dyadic from_rational_down(const Rational& q, long prec) { return from_rational(q, prec, false); }
    static Dyadic from_rational_up(const Rational& q, long prec) { return from_rational(q, prec, true); }

    static Dyadic div_down(const Dyadic& a, const Dyadic& b, long prec) { return divide(a, b, prec, false); }
    static Dyadic div_up(const Dyadic& a, const Dyadic& b, long prec) { return divide(a, b, prec, true); }

    /// Lower / upper bound for sqrt(v), v >= 0.
    static Dyadic sqrt_down(const Dyadic& v, long prec) { return square_root(v, prec, false); }
    static Dyadic sqrt_up(const Dyadic& v, long prec) { return square_root(v, prec, true); }

private:
    void normalize() {
        if (mant_ == 0) { exp_ = 0; return; }
        auto tz = mpz_scan1(mant_.get_mpz_t(), 0);
        if (tz > 0) {
            mant_ >>= tz;
            exp_ += static_cast<long>(tz);
        }
    }

    Dyadic round_dir(long prec, bool up) const {
        if (prec <= 0 || is_zero()) return *this;
        long bl = bit_length(mant_);
        if (bl <= prec) return *this;
        auto drop = static_cast<mp_bitcnt_t>(bl - prec);
        Integer t;
        if (up) {
            mpz_cdiv_q_2exp(t.get_mpz_t(), mant_.get_mpz_t(), drop);
        } else {
            mpz_fdiv_q_2exp(t.get_mpz_t(), mant_.get_mpz_t(), drop);
        }
        return Dyadic(t, exp_ + static_cast<long>(drop));
    }

    static Dyadic from_rational(const Rational& q, long prec, bool up) {
        if (q == 0) return Dyadic();
        const Integer& n = q.get_num();
        const Integer& d = q.get_den();
        // choose k with |q| * 2^k having about prec bits
        long k = prec + bit_length(d) - bit_length(n) + 1;
        Integer num = n;
        Integer den = d;
        if (k >= 0) {
            num <<= static_cast<mp_bitcnt_t>(k);
        } else {
            den <<= static_cast<mp_bitcnt_t>(-k);
        }
        Integer t;
        if (up) {
            mpz_cdiv_q(t.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        } else {
            mpz_fdiv_q(t.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
        return Dyadic(t, -k);
    }

    static Dyadic divide(const Dyadic& a, const Dyadic& b, long prec, bool up) {
        if (b.is_zero()) throw std::domain_error("dyadic division by zero");
        if (a.is_zero()) return Dyadic();
        if (prec <= 0) prec = 64;
        long k = prec + bit_length(b.mant_) - bit_length(a.mant_) + 1;
        Integer num = a.mant_;
        if (k > 0) num <<= static_cast<mp_bitcnt_t>(k);
        Integer den = b.mant_;
        if (k < 0) den <<= static_cast<mp_bitcnt_t>(-k);
        Integer t;
        if (up) {
            mpz_cdiv_q(t.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        } else {
            mpz_fdiv_q(t.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
        return Dyadic(t, a.exp_ - b.exp_ - k);
    }

    static Dyadic square_root(const Dyadic& v, long prec, bool up) {
        if (v.sign() < 0) throw std::domain_error("sqrt of negative dyadic");
        if (v.is_zero()) return Dyadic();
        if (prec <= 0) prec = 64;
        // v = m 2^e; scale so that exponent is even and mantissa has >= 2 prec bits
        long shift = 2 * prec + 2 - bit_length(v.mant_);
        if (shift < 0) shift = 0;
        long e = v.exp_ - shift;
        if (e % 2 != 0) { shift += 1; e -= 1; }
        Integer m = v.mant_ << static_cast<mp_bitcnt_t>(shift);
        Integer r;
        mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
        if (up && r * r != m) r += 1;
        return Dyadic(r, e / 2);
    }

    Integer mant_{0};
    long exp_{0};
};

inline std::ostream& operator<<(std::ostream& os, const Dyadic& d) { return os << d.to_double(); }

inline Dyadic min(const Dyadic& a, const Dyadic& b) { return a <= b ? a : b; }
inline Dyadic max(const Dyadic& a, const Dyadic& b) { return a >= b ? a : b; }

/// Exact sign of (dyadic - rational).
inline int cmp(const Dyadic& a, const Rational& q) {
    return cmp(a.to_rational(), q) < 0 ? -1 : (a.to_rational() == q ? 0 : 1);
}

/// Closed real interval [lo, hi] with dyadic endpoints.
struct Interval {
    Dyadic lo;
    Dyadic hi;

    Interval() = default;
    Interval(Dyadic point) : lo(point), hi(std::move(point)) {}  // NOLINT(implicit)
    Interval(Dyadic l, Dyadic h) : lo(std::move(l)), hi(std::move(h)) {
        if (hi < lo) throw std::invalid_argument("interval with lo > hi");
    }

    Dyadic width() const { return hi - lo; }
    Dyadic mid() const { return (lo + hi).half(); }
    Dyadic rad() const { return (hi - lo).half(); }
    bool is_point() const { return lo == hi; }
    bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
    bool contains(const Dyadic& v) const { return lo <= v && v <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool overlaps(const Interval& o) const { return !(hi < o.lo || o.hi < lo); }
    int sign() const {  // 0 when ambiguous
        if (lo.sign() > 0) return 1;
        if (hi.sign() < 0) return -1;
        return 0;
    }
    /// max |x|
    Dyadic mag() const { return max(lo.abs(), hi.abs()); }
    /// min |x|
    Dyadic mig() const {
        if (contains_zero()) return Dyadic();
        return min(lo.abs(), hi.abs());
    }

    Interval round_out(long prec) const {
        if (prec <= 0) return *this;
        return {lo.round_down(prec), hi.round_up(prec)};
    }

    Interval operator-() const { return {-hi, -lo}; }
    friend Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
    friend Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
    friend Interval operator*(const Interval& a, const Interval& b) {
        if (a.is_point() && b.is_point()) return Interval(a.lo * b.lo);
        Dyadic p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
        return {min(min(p1, p2), min(p3, p4)), max(max(p1, p2), max(p3, p4))};
    }
    Interval sqr() const {
        Dyadic a = lo * lo, b = hi * hi;
        if (contains_zero()) return {Dyadic(), max(a, b)};
        return {min(a, b), max(a, b)};
    }
    Interval abs() const {
        if (lo.sign() >= 0) return *this;
        if (hi.sign() <= 0) return -*this;
        return {Dyadic(), max(-lo, hi)};
    }
    Interval hull(const Interval& o) const { return {min(lo, o.lo), max(hi, o.hi)}; }

    /// Enclosure of 1/x for x not containing zero.
    Interval reciprocal(long prec) const {
        if (contains_zero()) throw std::domain_error("reciprocal of interval containing zero");
        return {Dyadic::div_down(Dyadic(1), hi, prec), Dyadic::div_up(Dyadic(1), lo, prec)};
    }
    Interval sqrt(long prec) const {
        Dyadic l = lo.sign() > 0 ? Dyadic::sqrt_down(lo, prec) : Dyadic();
        return {l, Dyadic::sqrt_up(max(hi, Dyadic()), prec)};
    }
};

inline std::ostream& operator<<(std::ostream& os, const Interval& iv) {
    return os << "[" << iv.lo << ", " << iv.hi << "]";
}

/// Outward-rounded enclosure of a rational.
inline Interval enclose(const Rational& q, long prec) {
    Dyadic lo = Dyadic::from_rational_down(q, prec);
    Dyadic hi = Dyadic::from_rational_up(q, prec);
    return {lo, hi};
}

/// Complex box re x im.
struct ComplexBox {
    Interval re;
    Interval im;

    ComplexBox() = default;
    ComplexBox(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}
    ComplexBox(const Dyadic& r, const Dyadic& i) : re(r), im(i) {}

    friend ComplexBox operator+(const ComplexBox& a, const ComplexBox& b) { return {a.re + b.re, a.im + b.im}; }
    friend ComplexBox operator-(const ComplexBox& a, const ComplexBox& b) { return {a.re - b.re, a.im - b.im}; }
    friend ComplexBox operator*(const ComplexBox& a, const ComplexBox& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    ComplexBox round_out(long prec) const { return {re.round_out(prec), im.round_out(prec)}; }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    /// |z|^2 enclosure
    Interval norm2() const { return re.sqr() + im.sqr(); }
    /// upper bound for |z|
    Dyadic abs_up(long prec) const { return Dyadic::sqrt_up(norm2().hi, prec); }
    /// lower bound for |z|
    Dyadic abs_down(long prec) const {
        Interval n = norm2();
        return n.lo.sign() > 0 ? Dyadic::sqrt_down(n.lo, prec) : Dyadic();
    }
    ComplexBox conj() const { return {re, -im}; }

    /// Enclosure of 1/z for a box not containing 0.
    ComplexBox reciprocal(long prec) const {
        Interval n = norm2().round_out(prec);
        Interval inv = n.reciprocal(prec);
        return ComplexBox(re * inv, -(im * inv)).round_out(prec);
    }
};

/// Closed disc with dyadic center and radius.
struct ComplexDisc {
    Dyadic center_re;
    Dyadic center_im;
    Dyadic radius;

    bool meets_real_axis() const { return center_im.abs() <= radius; }
};

/// Axis-aligned bounding box of the closed disc.
inline ComplexBox disc_to_box(const ComplexDisc& d) {
    if (d.radius.sign() < 0) throw std::invalid_argument("negative disc radius");
    return {Interval(d.center_re - d.radius, d.center_re + d.radius),
            Interval(d.center_im - d.radius, d.center_im + d.radius)};
}

/// Certifies that two closed discs are disjoint.
inline bool discs_disjoint(const ComplexDisc& a, const ComplexDisc& b) {
    Dyadic dx = a.center_re - b.center_re;
    Dyadic dy = a.center_im - b.center_im;
    Dyadic r = a.radius + b.radius;
    return dx * dx + dy * dy > r * r;
}

/// Shortest dyadic strictly inside the open interval (a, b), a < b.
inline Dyadic simplest_between(const Dyadic& a, const Dyadic& b) {
    if (!(a < b)) throw std::invalid_argument("simplest_between: empty interval");
    // integer candidates first
    Integer fa = a.floor() + 1;
    if (Dyadic(fa) < b) {
        // pick the integer of smallest absolute value in (a,b)
        Integer cb = b.ceil() - 1;
        if (fa <= 0 && cb >= 0) return Dyadic(0);
        if (fa > 0) return Dyadic(fa);
        return Dyadic(cb);
    }
    for (long k = 1;; ++k) {
        Dyadic c = a.floor_at(k) + Dyadic(1).mul_2exp(-k);
        if (a < c && c < b) return c;
    }
}

}  // namespace curvekit
