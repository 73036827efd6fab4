#pragma once

// Modular engine: prime tables, polynomials over Z/p, univariate resultants
// and gcds mod p, interpolation, mixed-radix reconstruction, the Collins
// style bivariate resultant, Brown's modular integer gcd and modular
// subresultant degree profiles.

#include "poly.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace curvekit {

using u64 = std::uint64_t;

inline u64 mulmod(u64 a, u64 b, u64 p) { return (a * b) % p; }
inline u64 addmod(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    return s >= p ? s - p : s;
}
inline u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
inline u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}
inline u64 invmod(u64 a, u64 p) {
    if (a % p == 0) throw std::domain_error("inverse of zero mod p");
    return powmod(a, p - 2, p);
}
inline u64 reduce(const Integer& v, u64 p) {
    return static_cast<u64>(mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(p)));
}

/// The largest primes below 2^bits, descending.
inline const std::vector<u64>& prime_table(int bits) {
    static std::mutex mu;
    static std::map<int, std::vector<u64>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(bits);
    if (it != cache.end()) return it->second;
    if (bits < 16 || bits > 31) throw std::invalid_argument("prime bits must be in [16, 31]");
    std::vector<u64> ps;
    Integer c = (Integer(1) << static_cast<mp_bitcnt_t>(bits)) - 1;
    while (ps.size() < 4096) {
        if (mpz_probab_prime_p(c.get_mpz_t(), 30) > 0) ps.push_back(c.get_ui());
        c -= 2;
    }
    return cache.emplace(bits, std::move(ps)).first->second;
}

/// Seeded deterministic stream of distinct primes from the table.
class PrimeStream {
public:
    explicit PrimeStream(std::uint64_t seed, int bits = 31) : table_(&prime_table(bits)) {
        order_.resize(table_->size());
        for (size_t i = 0; i < order_.size(); ++i) order_[i] = i;
        std::mt19937_64 rng(seed);
        std::shuffle(order_.begin(), order_.end(), rng);
    }
    u64 next() {
        if (pos_ >= order_.size()) throw std::runtime_error("prime table exhausted");
        return (*table_)[order_[pos_++]];
    }

private:
    const std::vector<u64>* table_;
    std::vector<size_t> order_;
    size_t pos_ = 0;
};

/// Polynomial over Z/p, lowest coefficient first, trimmed.
struct ModPoly {
    u64 p = 2;
    std::vector<u64> c;

    ModPoly() = default;
    ModPoly(u64 prime, std::vector<u64> cs) : p(prime), c(std::move(cs)) { trim(); }
    static ModPoly from(const IntPoly& a, u64 prime) {
        std::vector<u64> cs;
        for (const auto& v : a.coeffs()) cs.push_back(reduce(v, prime));
        return ModPoly(prime, std::move(cs));
    }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    u64 lc() const { return c.back(); }
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    u64 eval(u64 x) const {
        u64 r = 0;
        for (size_t i = c.size(); i-- > 0;) r = addmod(mulmod(r, x, p), c[i], p);
        return r;
    }
    ModPoly monic() const {
        if (is_zero()) return *this;
        u64 inv = invmod(lc(), p);
        ModPoly r = *this;
        for (auto& v : r.c) v = mulmod(v, inv, p);
        return r;
    }
    friend bool operator==(const ModPoly& a, const ModPoly& b) { return a.p == b.p && a.c == b.c; }
};

inline ModPoly mod_mul(const ModPoly& a, const ModPoly& b) {
    if (a.is_zero() || b.is_zero()) return ModPoly(a.p, {});
    std::vector<u64> r(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r[i + j] = addmod(r[i + j], mulmod(a.c[i], b.c[j], a.p), a.p);
    return ModPoly(a.p, std::move(r));
}

/// a = q b + r over Z/p.
inline void mod_divrem(const ModPoly& a, const ModPoly& b, ModPoly& q, ModPoly& r) {
    if (b.is_zero()) throw std::domain_error("mod division by zero");
    const u64 p = a.p;
    std::vector<u64> rc = a.c;
    int da = a.degree(), db = b.degree();
    std::vector<u64> qc(da >= db ? static_cast<size_t>(da - db + 1) : 0, 0);
    u64 inv = invmod(b.lc(), p);
    for (int k = da; k >= db; --k) {
        u64 t = mulmod(rc[static_cast<size_t>(k)], inv, p);
        qc[static_cast<size_t>(k - db)] = t;
        if (t == 0) continue;
        for (int j = 0; j <= db; ++j) {
            size_t idx = static_cast<size_t>(k - db + j);
            rc[idx] = submod(rc[idx], mulmod(t, b.c[static_cast<size_t>(j)], p), p);
        }
    }
    q = ModPoly(p, std::move(qc));
    r = ModPoly(p, std::move(rc));
}

inline ModPoly mod_rem(const ModPoly& a, const ModPoly& b) {
    ModPoly q, r;
    mod_divrem(a, b, q, r);
    return r;
}

/// Monic gcd by the Euclidean algorithm (zero if both are zero).
inline ModPoly zp_gcd(ModPoly a, ModPoly b) {
    while (!b.is_zero()) {
        ModPoly r = mod_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Resultant of univariate polynomials over Z/p with respect to their
/// actual degrees (Sylvester determinant).
inline u64 zp_resultant_uni(ModPoly a, ModPoly b) {
    const u64 p = a.p;
    if (a.is_zero() || b.is_zero()) return 0;
    u64 acc = 1;
    while (true) {
        int m = a.degree(), n = b.degree();
        if (n == 0) return mulmod(acc, powmod(b.lc(), static_cast<u64>(m), p), p);
        if (m == 0) return mulmod(acc, powmod(a.lc(), static_cast<u64>(n), p), p);
        if (m < n) {
            if ((static_cast<long>(m) * n) % 2 == 1) acc = submod(0, acc, p);
            std::swap(a, b);
            continue;
        }
        ModPoly r = mod_rem(a, b);
        if (r.is_zero()) return 0;
        // res(a,b) = (-1)^{mn} lc(b)^{m - deg r} res(b, r)
        if ((static_cast<long>(m) * n) % 2 == 1) acc = submod(0, acc, p);
        acc = mulmod(acc, powmod(b.lc(), static_cast<u64>(m - r.degree()), p), p);
        a = std::move(b);
        b = std::move(r);
    }
}

/// Newton interpolation over Z/p.
inline ModPoly zp_interpolate(const std::vector<u64>& xs, const std::vector<u64>& ys, u64 p) {
    if (xs.size() != ys.size()) throw std::invalid_argument("interpolation: size mismatch");
    const size_t n = xs.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (xs[i] % p == xs[j] % p) throw std::invalid_argument("interpolation: duplicate points");
    // divided differences
    std::vector<u64> d(ys);
    for (auto& v : d) v %= p;
    for (size_t k = 1; k < n; ++k)
        for (size_t i = n - 1; i >= k; --i) {
            u64 num = submod(d[i], d[i - 1], p);
            u64 den = submod(xs[i] % p, xs[i - k] % p, p);
            d[i] = mulmod(num, invmod(den, p), p);
            if (i == k) break;
        }
    // Horner on the Newton form
    ModPoly r(p, {});
    for (size_t k = n; k-- > 0;) {
        r = mod_mul(r, ModPoly(p, {submod(0, xs[k] % p, p), 1}));
        std::vector<u64> c = r.c;
        if (c.empty()) c.push_back(0);
        c[0] = addmod(c[0], d[k], p);
        r = ModPoly(p, std::move(c));
    }
    return r;
}

/// Mixed-radix conversion: the unique integer in (-M/2, M/2] with the given
/// residues, M the product of the (pairwise distinct) primes.
inline Integer crt_reconstruct(const std::vector<u64>& primes, const std::vector<u64>& residues) {
    const size_t k = primes.size();
    if (residues.size() != k) throw std::invalid_argument("crt: size mismatch");
    if (k == 0) return 0;
    std::vector<u64> v(k);
    for (size_t i = 0; i < k; ++i) {
        const u64 p = primes[i];
        u64 t = residues[i] % p;
        // subtract the already known digits: t = (r_i - (v_0 + v_1 p_0 + ...)) / (p_0 ... p_{i-1})
        for (size_t j = 0; j < i; ++j) {
            t = submod(t, v[j] % p, p);
            t = mulmod(t, invmod(primes[j] % p, p), p);
        }
        v[i] = t;
    }
    Integer x = 0;
    for (size_t i = k; i-- > 0;) {
        x *= static_cast<unsigned long>(primes[i]);
        x += static_cast<unsigned long>(v[i]);
    }
    Integer M = 1;
    for (u64 p : primes) M *= static_cast<unsigned long>(p);
    if (2 * x > M) x -= M;
    return x;
}

/// Incremental coefficient-wise CRT accumulator (Garner updates).
class CrtAccumulator {
public:
    void add(u64 p, const std::vector<u64>& residues) {
        if (values_.size() < residues.size()) values_.resize(residues.size(), Integer(0));
        std::vector<u64> res = residues;
        res.resize(values_.size(), 0);
        if (modulus_ == 0) {
            modulus_ = 1;
        }
        Integer Mmod = modulus_ % static_cast<unsigned long>(p);
        u64 inv = modulus_ == 1 ? 1 : invmod(Mmod.get_ui(), p);
        for (size_t i = 0; i < values_.size(); ++i) {
            u64 cur = reduce(values_[i], p);
            u64 t = mulmod(submod(res[i], cur, p), inv, p);
            values_[i] += modulus_ * static_cast<unsigned long>(t);
        }
        modulus_ *= static_cast<unsigned long>(p);
    }
    const Integer& modulus() const { return modulus_; }
    /// Symmetric representatives.
    std::vector<Integer> symmetric() const {
        std::vector<Integer> r = values_;
        for (auto& v : r)
            if (2 * v > modulus_) v -= modulus_;
        return r;
    }

private:
    std::vector<Integer> values_;
    Integer modulus_ = 0;
};

namespace detail {

using ModBi = std::vector<ModPoly>;  // y-coefficients reduced mod p

inline ModBi reduce_bi(const BiPoly& f, u64 p) {
    ModBi r;
    for (const auto& c : f.ycoeffs()) r.push_back(ModPoly::from(c, p));
    return r;
}

/// f(x0, y) mod p with declared degree deg_y f (may have a vanishing top).
inline std::vector<u64> eval_bi(const ModBi& f, u64 x0) {
    std::vector<u64> r;
    for (const auto& c : f) r.push_back(c.eval(x0));
    return r;
}

/// Squared l2-norm of the vector of l1-norms of the y-coefficients.
inline Integer row_norm2(const BiPoly& f) {
    Integer s = 0;
    for (const auto& c : f.ycoeffs()) {
        Integer l1 = 0;
        for (const auto& v : c.coeffs()) l1 += abs(v);
        s += l1 * l1;
    }
    return s;
}

/// Determinant mod p by Gaussian elimination (destroys the matrix).
inline u64 det_mod(std::vector<std::vector<u64>>& a, u64 p) {
    const size_t n = a.size();
    u64 det = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = submod(0, det, p);
        }
        det = mulmod(det, a[col][col], p);
        u64 inv = invmod(a[col][col], p);
        for (size_t r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            u64 f = mulmod(a[r][col], inv, p);
            for (size_t c = col; c < n; ++c) a[r][c] = submod(a[r][c], mulmod(f, a[col][c], p), p);
        }
    }
    return det;
}

}  // namespace detail

/// res_y(f, g) computed by modular evaluation/interpolation and CRT, with the
/// Sylvester matrix built from the formal degrees deg_y f and deg_y g.
/// Terminates on a Hadamard bound, so the result is exact.
inline IntPoly biv_resultant_y(const BiPoly& f, const BiPoly& g, std::uint64_t seed = 1, int prime_bits = 31) {
    if (f.is_zero() || g.is_zero()) return {};
    const int m = f.deg_y(), n = g.deg_y();
    if (m == 0 && n == 0) return IntPoly::constant(1);
    if (n == 0) return g.lc_y().pow(m);
    if (m == 0) return f.lc_y().pow(n);
    const int D = m * std::max(g.deg_x(), 0) + n * std::max(f.deg_x(), 0);
    // coefficient bound B with B^2 = |f|^(2n) |g|^(2m)
    Integer B2 = detail::row_norm2(f);
    mpz_pow_ui(B2.get_mpz_t(), B2.get_mpz_t(), static_cast<unsigned long>(n));
    Integer gb = detail::row_norm2(g);
    mpz_pow_ui(gb.get_mpz_t(), gb.get_mpz_t(), static_cast<unsigned long>(m));
    B2 *= gb;
    PrimeStream primes(seed, prime_bits);
    CrtAccumulator acc;
    while (true) {
        const u64 p = primes.next();
        detail::ModBi fm = detail::reduce_bi(f, p), gm = detail::reduce_bi(g, p);
        if (fm.back().is_zero() || gm.back().is_zero()) continue;  // unlucky prime
        std::vector<u64> xs, ys;
        for (u64 x0 = 0; xs.size() < static_cast<size_t>(D) + 1 && x0 < p; ++x0) {
            std::vector<u64> a = detail::eval_bi(fm, x0), b = detail::eval_bi(gm, x0);
            if (a.back() == 0 || b.back() == 0) continue;
            xs.push_back(x0);
            ys.push_back(zp_resultant_uni(ModPoly(p, a), ModPoly(p, b)));
        }
        if (xs.size() < static_cast<size_t>(D) + 1) continue;
        ModPoly r = zp_interpolate(xs, ys, p);
        std::vector<u64> cs = r.c;
        cs.resize(static_cast<size_t>(D) + 1, 0);
        acc.add(p, cs);
        const Integer& M = acc.modulus();
        if (M * M > 4 * B2) break;
    }
    return IntPoly(acc.symmetric());
}

inline IntPoly biv_resultant_x(const BiPoly& f, const BiPoly& g, std::uint64_t seed = 1, int prime_bits = 31) {
    return biv_resultant_y(f.swap_xy(), g.swap_xy(), seed, prime_bits);
}

/// Resultant of two univariate integer polynomials (exact).
inline Integer int_resultant_uni(const IntPoly& a, const IntPoly& b) {
    IntPoly r = biv_resultant_y(BiPoly::from_y(a), BiPoly::from_y(b));
    return r.coeff(0);
}

/// Primitive gcd over Z with positive leading coefficient (Brown's modular
/// algorithm, verified by trial division).
inline IntPoly int_gcd_uni(const IntPoly& f, const IntPoly& g, std::uint64_t seed = 7) {
    if (f.is_zero() && g.is_zero()) throw std::invalid_argument("gcd(0, 0)");
    if (f.is_zero()) return g.primitive_part();
    if (g.is_zero()) return f.primitive_part();
    IntPoly a = f.primitive_part(), b = g.primitive_part();
    if (a.degree() == 0 || b.degree() == 0) return IntPoly::constant(1);
    if (a.degree() < b.degree()) std::swap(a, b);
    Integer gamma;
    mpz_gcd(gamma.get_mpz_t(), a.lc().get_mpz_t(), b.lc().get_mpz_t());
    PrimeStream primes(seed);
    int best = b.degree() + 1;
    CrtAccumulator acc;
    std::vector<Integer> last;
    while (true) {
        const u64 p = primes.next();
        if (reduce(a.lc(), p) == 0 || reduce(b.lc(), p) == 0) continue;
        ModPoly gm = zp_gcd(ModPoly::from(a, p), ModPoly::from(b, p));
        if (gm.degree() == 0) return IntPoly::constant(1);
        if (gm.degree() > best) continue;  // unlucky
        u64 gam = reduce(gamma, p);
        std::vector<u64> cs;
        for (u64 v : gm.c) cs.push_back(mulmod(v, gam, p));
        if (gm.degree() < best) {
            best = gm.degree();
            acc = CrtAccumulator();
            last.clear();
        }
        acc.add(p, cs);
        std::vector<Integer> cur = acc.symmetric();
        if (cur == last) {
            IntPoly cand = IntPoly(cur).primitive_part();
            IntPoly q;
            if (try_divide(a, cand, q) && try_divide(b, cand, q)) return cand;
        }
        last = std::move(cur);
    }
}

/// Monic gcd mod p read off the last nonzero row of a row echelon form of
/// the Sylvester matrix.
inline ModPoly zp_gcd_sylvester(const ModPoly& f, const ModPoly& g) {
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("sylvester gcd of zero polynomial");
    const u64 p = f.p;
    const int m = f.degree(), n = g.degree();
    if (m == 0 || n == 0) return ModPoly(p, {1});
    const size_t N = static_cast<size_t>(m + n);
    // column j holds the coefficient of y^(N-1-j)
    std::vector<std::vector<u64>> S(N, std::vector<u64>(N, 0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= m; ++k) S[static_cast<size_t>(i)][static_cast<size_t>(i + m - k)] = f.c[static_cast<size_t>(k)];
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= n; ++k) S[static_cast<size_t>(n + i)][static_cast<size_t>(i + n - k)] = g.c[static_cast<size_t>(k)];
    size_t row = 0;
    for (size_t col = 0; col < N && row < N; ++col) {
        size_t piv = row;
        while (piv < N && S[piv][col] == 0) ++piv;
        if (piv == N) continue;
        std::swap(S[piv], S[row]);
        u64 inv = invmod(S[row][col], p);
        for (size_t r = row + 1; r < N; ++r) {
            if (S[r][col] == 0) continue;
            u64 fct = mulmod(S[r][col], inv, p);
            for (size_t c = col; c < N; ++c) S[r][c] = submod(S[r][c], mulmod(fct, S[row][c], p), p);
        }
        ++row;
    }
    const auto& last = S[row - 1];
    std::vector<u64> cs(N, 0);
    for (size_t j = 0; j < N; ++j) cs[N - 1 - j] = last[j];
    return ModPoly(p, std::move(cs)).monic();
}

/// Principal subresultant coefficient psc_i of univariate a, b mod p
/// (deg a = m >= deg b = n, 0 <= i <= n), as a determinant.
inline u64 zp_psc(const std::vector<u64>& a, const std::vector<u64>& b, int i, u64 p) {
    const int m = static_cast<int>(a.size()) - 1, n = static_cast<int>(b.size()) - 1;
    const int rows_a = n - i, rows_b = m - i;
    const int cols = m + n - 2 * i;
    if (cols == 0) return 1;
    const int width = m + n - i;  // total columns of the subresultant matrix
    std::vector<std::vector<u64>> M;
    for (int r = 0; r < rows_a; ++r) {
        std::vector<u64> row(static_cast<size_t>(width), 0);
        for (int k = 0; k <= m; ++k) row[static_cast<size_t>(r + m - k)] = a[static_cast<size_t>(k)];
        row.resize(static_cast<size_t>(cols));
        M.push_back(std::move(row));
    }
    for (int r = 0; r < rows_b; ++r) {
        std::vector<u64> row(static_cast<size_t>(width), 0);
        for (int k = 0; k <= n; ++k) row[static_cast<size_t>(r + n - k)] = b[static_cast<size_t>(k)];
        row.resize(static_cast<size_t>(cols));
        M.push_back(std::move(row));
    }
    return detail::det_mod(M, p);
}

struct SubresultantProfile {
    u64 prime = 0;
    std::vector<int> n;  // n_i = deg S_i, i = 0..
    std::vector<int> d;  // d_i = n_{i-1} - n_i, index 0 unused (0)
};

/// sr_i(x) mod p for i = 1..deg_y g, as polynomials in x.
inline std::vector<ModPoly> modular_psc_polys(const BiPoly& f, const BiPoly& g, u64 p) {
    const int m = f.deg_y(), n = g.deg_y();
    if (n > m || n < 1) throw std::invalid_argument("psc: need 1 <= deg_y g <= deg_y f");
    detail::ModBi fm = detail::reduce_bi(f, p), gm = detail::reduce_bi(g, p);
    if (fm.back().is_zero() || gm.back().is_zero()) throw std::runtime_error("unlucky prime");
    std::vector<ModPoly> out;
    const int dfx = std::max(f.deg_x(), 0), dgx = std::max(g.deg_x(), 0);
    for (int i = 1; i <= n; ++i) {
        int D = (n - i) * dfx + (m - i) * dgx;
        std::vector<u64> xs, ys;
        for (u64 x0 = 0; xs.size() < static_cast<size_t>(D) + 1 && x0 < p; ++x0) {
            std::vector<u64> a = detail::eval_bi(fm, x0), b = detail::eval_bi(gm, x0);
            if (a.back() == 0 || b.back() == 0) continue;
            xs.push_back(x0);
            ys.push_back(zp_psc(a, b, i, p));
        }
        if (xs.size() < static_cast<size_t>(D) + 1) throw std::runtime_error("unlucky prime");
        out.push_back(zp_interpolate(xs, ys, p));
    }
    return out;
}

/// Degree profile S_0 = R* mod p, S_i = gcd(S_{i-1}, sr_i mod p).
inline SubresultantProfile modular_subres_profile(const BiPoly& f, const BiPoly& g, const IntPoly& rstar, u64 p) {
    SubresultantProfile prof;
    prof.prime = p;
    if (ModPoly::from(f.lc_y(), p).is_zero() || ModPoly::from(g.lc_y(), p).is_zero())
        throw std::runtime_error("unlucky prime");
    ModPoly S = ModPoly::from(rstar, p);
    if (S.degree() != rstar.degree()) throw std::runtime_error("unlucky prime");
    std::vector<ModPoly> sr = modular_psc_polys(f, g, p);
    prof.n.push_back(S.degree());
    prof.d.push_back(0);
    for (const auto& s : sr) {
        S = s.is_zero() ? S.monic() : zp_gcd(S, s);
        prof.n.push_back(S.degree());
        prof.d.push_back(prof.n[prof.n.size() - 2] - S.degree());
    }
    return prof;
}

// --- bivariate gcd and contents (primitive PRS over Z[x]) ---------------

/// gcd over Z[x] of all y-coefficients (primitive, positive lc); zero poly -> 0.
inline IntPoly content_x(const BiPoly& f) {
    IntPoly g;
    for (const auto& c : f.ycoeffs()) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c.primitive_part() : int_gcd_uni(g, c);
        if (g.degree() == 0) return IntPoly::constant(1);
    }
    return g;
}

inline BiPoly divide_by_x_poly(const BiPoly& f, const IntPoly& h) {
    std::vector<IntPoly> r;
    for (const auto& c : f.ycoeffs()) r.push_back(c.is_zero() ? IntPoly() : exact_divide(c, h));
    return BiPoly(std::move(r));
}

/// Exact division in Z[x][y]; returns false when b does not divide a.
inline bool try_divide_bi(const BiPoly& a, const BiPoly& b, BiPoly& q) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (a.is_zero()) {
        q = BiPoly();
        return true;
    }
    int da = a.deg_y(), db = b.deg_y();
    if (da < db) return false;
    std::vector<IntPoly> rc = a.ycoeffs();
    std::vector<IntPoly> qc(static_cast<size_t>(da - db + 1));
    for (int k = da; k >= db; --k) {
        const IntPoly& t = rc[static_cast<size_t>(k)];
        if (t.is_zero()) continue;
        IntPoly c;
        if (!try_divide(t, b.lc_y(), c)) return false;
        qc[static_cast<size_t>(k - db)] = c;
        for (int j = 0; j <= db; ++j) rc[static_cast<size_t>(k - db + j)] -= c * b.ycoeff(j);
    }
    for (const auto& v : rc)
        if (!v.is_zero()) return false;
    q = BiPoly(std::move(qc));
    return true;
}

/// Pseudo-remainder in y over Z[x].
inline BiPoly prem_y(const BiPoly& a, const BiPoly& b) {
    std::vector<IntPoly> rc = a.ycoeffs();
    int db = b.deg_y();
    const IntPoly& l = b.lc_y();
    for (int k = a.deg_y(); k >= db; --k) {
        IntPoly t = rc[static_cast<size_t>(k)];
        for (auto& v : rc) v = l * v;
        for (int j = 0; j <= db; ++j) rc[static_cast<size_t>(k - db + j)] -= t * b.ycoeff(j);
        rc.resize(static_cast<size_t>(k));
    }
    return BiPoly(std::move(rc));
}

/// Primitive part with respect to y (content in Z[x] removed, positive
/// leading coefficient).
inline BiPoly primitive_part_y(const BiPoly& f) {
    if (f.is_zero()) return f;
    IntPoly c = content_x(f);
    BiPoly r = divide_by_x_poly(f, c);
    if (r.lc_y().lc() < 0) r = -r;
    return r;
}

/// gcd in Z[x, y], normalized to positive leading coefficient and content-free
/// over Z.
inline BiPoly biv_gcd(const BiPoly& f, const BiPoly& g) {
    if (f.is_zero() || g.is_zero()) {
        BiPoly r = f.is_zero() ? g : f;
        if (r.is_zero()) throw std::invalid_argument("gcd(0, 0)");
        r = r.div_scalar(r.int_content());
        return r.lc_y().lc() < 0 ? -r : r;
    }
    IntPoly cf = content_x(f), cg = content_x(g);
    IntPoly c = int_gcd_uni(cf, cg);
    BiPoly a = primitive_part_y(f), b = primitive_part_y(g);
    if (a.deg_y() < b.deg_y()) std::swap(a, b);
    while (b.deg_y() > 0) {
        BiPoly r = prem_y(a, b);
        if (r.is_zero()) break;
        a = std::move(b);
        b = primitive_part_y(r);
    }
    BiPoly res = b.deg_y() > 0 ? b : BiPoly::constant(1);
    res = BiPoly::from_x(c) * res;
    Integer ic = res.int_content();
    res = res.div_scalar(ic);
    if (res.lc_y().lc() < 0) res = -res;
    return res;
}

}  // namespace curvekit
