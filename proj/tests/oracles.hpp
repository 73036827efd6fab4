#pragma once

// Independent reference computations used by the test suites. These avoid
// the library's modular machinery on purpose.

#include <curvekit/poly.hpp>

#include <random>
#include <vector>

namespace oracle {

using curvekit::BiPoly;
using curvekit::Integer;
using curvekit::IntPoly;

inline Integer random_integer(std::mt19937_64& rng, int bits) {
    Integer v = 0;
    for (int i = 0; i < bits; ++i) v = 2 * v + static_cast<unsigned long>(rng() & 1);
    return (rng() & 1) ? -v : v;
}

/// Dense univariate polynomial with coefficients in [-2^bits + 1, 2^bits - 1].
inline IntPoly random_uni(std::mt19937_64& rng, int deg, int bits) {
    std::vector<Integer> c;
    for (int i = 0; i <= deg; ++i) c.push_back(random_integer(rng, bits));
    if (c.back() == 0) c.back() = 1;
    return IntPoly(c);
}

/// Dense bivariate polynomial of total degree <= deg.
inline BiPoly random_biv(std::mt19937_64& rng, int deg, int bits) {
    BiPoly f;
    for (int i = 0; i <= deg; ++i)
        for (int j = 0; i + j <= deg; ++j) f += BiPoly::term(random_integer(rng, bits), i, j);
    return f;
}

/// Fraction-free (Bareiss) determinant over Z[x].
inline IntPoly bareiss_det(std::vector<std::vector<IntPoly>> a) {
    const size_t n = a.size();
    if (n == 0) return IntPoly::constant(1);
    IntPoly prev = IntPoly::constant(1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            size_t r = k + 1;
            while (r < n && a[r][k].is_zero()) ++r;
            if (r == n) return IntPoly();
            std::swap(a[r], a[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                IntPoly t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                a[i][j] = curvekit::exact_divide(t, prev);
            }
        prev = a[k][k];
    }
    IntPoly d = a[n - 1][n - 1];
    return sign < 0 ? -d : d;
}

/// Sylvester matrix with respect to y built from the formal degrees.
inline std::vector<std::vector<IntPoly>> sylvester_y(const BiPoly& f, const BiPoly& g) {
    const int m = f.deg_y(), n = g.deg_y();
    const size_t N = static_cast<size_t>(m + n);
    std::vector<std::vector<IntPoly>> S(N, std::vector<IntPoly>(N));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= m; ++k) S[static_cast<size_t>(i)][static_cast<size_t>(i + m - k)] = f.ycoeff(k);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= n; ++k) S[static_cast<size_t>(n + i)][static_cast<size_t>(i + n - k)] = g.ycoeff(k);
    return S;
}

inline IntPoly sylvester_det_y(const BiPoly& f, const BiPoly& g) { return bareiss_det(sylvester_y(f, g)); }

/// Product of (x - r_i) for integer r_i.
inline IntPoly from_roots(const std::vector<long>& rs) {
    IntPoly p = IntPoly::constant(1);
    for (long r : rs) p *= IntPoly(std::vector<Integer>{Integer(-r), Integer(1)});
    return p;
}

/// Number of distinct complex roots: deg p - deg gcd(p, p'), with the gcd
/// computed by an exact rational Euclidean algorithm.
inline int distinct_root_count(const IntPoly& p) {
    using curvekit::Rational;
    auto to_q = [](const IntPoly& a) {
        std::vector<Rational> r;
        for (const auto& c : a.coeffs()) r.emplace_back(c);
        return r;
    };
    auto trim = [](std::vector<Rational>& a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
    };
    std::vector<Rational> a = to_q(p), b = to_q(p.derivative());
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b
        while (a.size() >= b.size() && !a.empty()) {
            Rational q = a.back() / b.back();
            size_t off = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) a[off + i] -= q * b[i];
            trim(a);
        }
        std::swap(a, b);
    }
    return p.degree() - (static_cast<int>(a.size()) - 1);
}

}  // namespace oracle
