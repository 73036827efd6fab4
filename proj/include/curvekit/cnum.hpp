#pragma once

// Certified complex root isolation for polynomials with interval
// coefficients: Aberth-Ehrlich iteration on a representative, inclusion
// discs from Neumaier's lemma evaluated over the whole coefficient
// neighborhood, and classification of real clusters.

#include "upoly.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace curvekit {

/// Polynomial sum c_i z^i whose coefficients are only known up to the
/// intervals c_i. The top interval excludes zero.
struct BitstreamPoly {
    std::vector<Interval> coeffs;
    Dyadic mu;  // bound on every coefficient width

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    std::vector<Dyadic> median() const {
        std::vector<Dyadic> r;
        r.reserve(coeffs.size());
        for (const auto& c : coeffs) r.push_back(c.mid());
        return r;
    }
};

/// Produces coefficient enclosures of width at most 2^-bits.
using BitstreamSource = std::function<BitstreamPoly(long bits)>;

inline BitstreamPoly bitstream_exact(const IntPoly& p) {
    BitstreamPoly b;
    for (const auto& c : p.coeffs()) b.coeffs.emplace_back(Dyadic(c));
    return b;
}

inline BitstreamSource exact_source(const IntPoly& p) {
    BitstreamPoly b = bitstream_exact(p);
    return [b](long) { return b; };
}

/// Exact degree of f(alpha, y); -1 when f vanishes on the whole fiber.
inline int fiber_degree(const BiPoly& f, const AlgebraicNumber& alpha) {
    for (int j = f.deg_y(); j >= 0; --j)
        if (!is_root_of(f.ycoeff(j), alpha)) return j;
    return -1;
}

/// Coefficient enclosures of f(alpha, y) of width <= mu, truncated at the
/// exact fiber degree. Refines alpha as needed.
inline BitstreamPoly bitstream_from_fiber(const BiPoly& f, AlgebraicNumber& alpha, const Dyadic& mu,
                                          int degree = -2) {
    if (mu.sign() < 0) throw std::invalid_argument("bitstream_from_fiber: negative width");
    if (degree == -2) degree = fiber_degree(f, alpha);
    BitstreamPoly b;
    b.mu = mu;
    if (degree < 0) return b;
    long k = mu.is_zero() ? 0 : -mu.msb() + 2;
    while (true) {
        b.coeffs.clear();
        bool ok = true;
        for (int j = 0; j <= degree; ++j) {
            Interval v = interval_eval_uni(f.ycoeff(j), alpha.interval());
            if (!mu.is_zero() && !v.is_point()) v = Interval(v.lo.floor_at(k), v.hi.ceil_at(k));
            if (v.width() > mu) ok = false;
            b.coeffs.push_back(v);
        }
        if (ok && !b.coeffs.back().contains_zero()) return b;
        if (alpha.is_exact()) {
            // exact alpha: only the final rounding can be too coarse
            ++k;
            continue;
        }
        alpha.qir_step();
    }
}

inline BitstreamSource fiber_source(const BiPoly& f, const AlgebraicNumber& alpha) {
    auto a = std::make_shared<AlgebraicNumber>(alpha);
    int deg = fiber_degree(f, alpha);
    return [f, a, deg](long bits) { return bitstream_from_fiber(f, *a, Dyadic(1).mul_2exp(-bits), deg); };
}

/// Complex dyadic point.
struct Cx {
    Dyadic re, im;

    Cx() = default;
    Cx(Dyadic r, Dyadic i = Dyadic()) : re(std::move(r)), im(std::move(i)) {}  // NOLINT(implicit)
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    friend bool operator==(const Cx& a, const Cx& b) { return a.re == b.re && a.im == b.im; }
    Cx round(long prec) const { return {re.round(prec), im.round(prec)}; }
    /// Relative rounding plus truncation below 2^-(4 prec), which keeps
    /// guesses converging to zero from growing huge exponents.
    Cx round_guess(long prec) const {
        Cx r = round(prec);
        auto cut = [prec](const Dyadic& v) { return v.sign() >= 0 ? v.floor_at(4 * prec) : v.ceil_at(4 * prec); };
        return {cut(r.re), cut(r.im)};
    }
    friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cx operator*(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
    Dyadic norm2() const { return re * re + im * im; }
    double abs_approx() const { return std::hypot(re.to_double(), im.to_double()); }
    /// Perturbation size relative to the point, for prec-bit arithmetic.
    Dyadic nudge(long prec) const {
        long m = is_zero() ? 0 : std::max(re.msb(), im.msb());
        return Dyadic(1).mul_2exp(m - prec / 2);
    }
};

inline Cx cx_div(const Cx& a, const Cx& b, long prec) {
    Dyadic n = b.norm2().round(prec);
    Dyadic inv = Dyadic::div_down(Dyadic(1), n, prec);
    Cx num = (a * Cx(b.re, -b.im)).round(prec);
    return Cx(num.re * inv, num.im * inv).round(prec);
}

namespace detail {

/// g(z) and g'(z) by Horner, rounded to prec bits after each step.
inline void horner2(const std::vector<Dyadic>& c, const Cx& z, long prec, Cx& g, Cx& dg) {
    g = Cx(c.back());
    dg = Cx();
    for (size_t i = c.size() - 1; i-- > 0;) {
        dg = (dg * z + g).round(prec);
        g = (g * z + Cx(c[i])).round(prec);
    }
}

inline ComplexBox box_of(const Cx& z) { return ComplexBox(z.re, z.im); }

inline ComplexBox box_eval(const std::vector<Interval>& c, const Cx& z, long prec) {
    ComplexBox zb = box_of(z);
    ComplexBox r(c.back(), Interval(Dyadic()));
    for (size_t i = c.size() - 1; i-- > 0;) r = (r * zb + ComplexBox(c[i], Interval(Dyadic()))).round_out(prec);
    return r;
}

struct UnionFind {
    std::vector<size_t> p;
    explicit UnionFind(size_t n) : p(n) { std::iota(p.begin(), p.end(), size_t{0}); }
    size_t find(size_t x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(size_t a, size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) p[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace detail

/// One simultaneous (Jacobi) Aberth-Ehrlich update of all guesses for the
/// representative polynomial with coefficients rep.
inline std::vector<Cx> aberth_step(const std::vector<Dyadic>& rep, const std::vector<Cx>& z, long prec,
                                   std::mt19937_64* rng = nullptr) {
    const size_t n = z.size();
    std::vector<Cx> out(n);
    for (size_t i = 0; i < n; ++i) {
        Cx g, dg;
        detail::horner2(rep, z[i], prec, g, dg);
        if (g.is_zero()) {
            out[i] = z[i];
            continue;
        }
        Cx s;
        for (size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            Cx d = z[i] - z[j];
            if (d.is_zero()) continue;
            s = s + cx_div(Cx(Dyadic(1)), d, prec);
        }
        // z - g / (g' - g s)
        Cx den = (dg - (g * s).round(prec)).round(prec);
        if (den.is_zero()) {
            // numerical singularity: nudge the guess inside its neighborhood
            Dyadic eps = z[i].nudge(prec);
            long k = rng ? static_cast<long>((*rng)() % 7) + 1 : 1;
            out[i] = z[i] + Cx(eps * Dyadic(k), eps);
            continue;
        }
        out[i] = (z[i] - cx_div(g, den, prec)).round_guess(prec);
    }
    return out;
}

enum class RealFlag { Real, NonReal, Undecided };

/// Connected component of the inclusion discs. Every polynomial in the
/// coefficient neighborhood has exactly `multiplicity` roots in the union.
struct CertifiedCluster {
    std::vector<ComplexDisc> discs;
    std::vector<size_t> members;  // guess indices
    int multiplicity = 0;
    RealFlag real_flag = RealFlag::Undecided;
    Interval real_trace;  // hull of the disc chords on the real axis, if any

    bool meets_real_axis() const {
        for (const auto& d : discs)
            if (d.meets_real_axis()) return true;
        return false;
    }
    bool overlaps(const CertifiedCluster& o) const {
        for (const auto& a : discs)
            for (const auto& b : o.discs)
                if (!discs_disjoint(a, b)) return true;
        return false;
    }
    bool overlaps_conj(const CertifiedCluster& o) const {
        for (const auto& a : discs)
            for (const auto& b : o.discs)
                if (!discs_disjoint({a.center_re, -a.center_im, a.radius}, b)) return true;
        return false;
    }
    /// Bounding box of the union.
    ComplexBox bounding_box() const {
        ComplexBox b = disc_to_box(discs.front());
        for (const auto& d : discs) {
            ComplexBox e = disc_to_box(d);
            b.re = b.re.hull(e.re);
            b.im = b.im.hull(e.im);
        }
        return b;
    }
    Dyadic center_re_approx() const { return discs.front().center_re; }
};

/// Inclusion discs for all guesses per Neumaier's lemma, grouped into
/// connected components (sorted by real part, then imaginary part).
inline std::vector<CertifiedCluster> neumaier_certify(const BitstreamPoly& gp, const std::vector<Cx>& z, long prec) {
    const size_t n = z.size();
    if (static_cast<int>(n) != gp.degree()) throw std::invalid_argument("neumaier_certify: need degree many guesses");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (z[i] == z[j]) throw std::invalid_argument("neumaier_certify: guesses must be distinct");
    const long p = prec + 8;
    ComplexBox scale(Interval(Dyadic(Integer(static_cast<long>(n)), -1)) * gp.coeffs.back().reciprocal(p),
                     Interval(Dyadic()));
    std::vector<ComplexDisc> discs(n);
    for (size_t i = 0; i < n; ++i) {
        ComplexBox gv = detail::box_eval(gp.coeffs, z[i], p);
        ComplexBox r;
        if (gv.re.is_point() && gv.im.is_point() && gv.re.lo.is_zero() && gv.im.lo.is_zero()) {
            r = ComplexBox(Dyadic(), Dyadic());
        } else {
            ComplexBox prod(Dyadic(1), Dyadic());
            for (size_t j = 0; j < n; ++j)
                if (j != i) prod = (prod * detail::box_of(z[i] - z[j])).round_out(p);
            r = (gv * prod.reciprocal(p)).round_out(p);
            r = (r * scale).round_out(p);
        }
        // disc D(z - r, |r|) for any r in the box lies in D(z - mid, |r|max + halfdiag)
        Dyadic cre = z[i].re - r.re.mid(), cim = z[i].im - r.im.mid();
        Dyadic rad = r.abs_up(p) + (r.re.rad() + r.im.rad());
        discs[i] = {cre, cim, rad.round_up(p)};
    }
    detail::UnionFind uf(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (!discs_disjoint(discs[i], discs[j])) uf.unite(i, j);
    std::vector<CertifiedCluster> out;
    std::vector<long> slot(n, -1);
    for (size_t i = 0; i < n; ++i) {
        size_t root = uf.find(i);
        if (slot[root] < 0) {
            slot[root] = static_cast<long>(out.size());
            out.emplace_back();
        }
        CertifiedCluster& c = out[static_cast<size_t>(slot[root])];
        c.discs.push_back(discs[i]);
        c.members.push_back(i);
        ++c.multiplicity;
    }
    std::sort(out.begin(), out.end(), [](const CertifiedCluster& a, const CertifiedCluster& b) {
        int c = cmp(a.bounding_box().re.lo, b.bounding_box().re.lo);
        if (c != 0) return c < 0;
        return a.bounding_box().im.lo < b.bounding_box().im.lo;
    });
    return out;
}

/// Decide real / nonreal for each cluster. `one_root_each` states that every
/// cluster holds a single distinct root (known when the count matched an
/// upper bound on the number of distinct roots).
inline void classify_real(std::vector<CertifiedCluster>& cs, bool one_root_each, long prec) {
    for (size_t i = 0; i < cs.size(); ++i) {
        CertifiedCluster& c = cs[i];
        c.real_flag = RealFlag::Undecided;
        if (!c.meets_real_axis() || !c.overlaps_conj(c)) {
            c.real_flag = RealFlag::NonReal;
            continue;
        }
        if (c.multiplicity > 1 && !one_root_each) continue;
        bool alone = true;
        for (size_t j = 0; j < cs.size() && alone; ++j)
            if (j != i && c.overlaps_conj(cs[j])) alone = false;
        if (!alone) continue;
        c.real_flag = RealFlag::Real;
        bool first = true;
        for (const auto& d : c.discs) {
            if (!d.meets_real_axis()) continue;
            Dyadic h2 = d.radius * d.radius - d.center_im * d.center_im;
            Dyadic h = Dyadic::sqrt_up(h2, prec);
            Interval t(d.center_re - h, d.center_re + h);
            c.real_trace = first ? t : c.real_trace.hull(t);
            first = false;
        }
    }
}

enum class IsolationStatus { Success, Failure };

struct IsolationResult {
    IsolationStatus status = IsolationStatus::Failure;
    std::vector<CertifiedCluster> clusters;
    long bits = 0;  // precision of the final round

    bool ok() const { return status == IsolationStatus::Success; }
    int total_multiplicity() const {
        int s = 0;
        for (const auto& c : clusters) s += c.multiplicity;
        return s;
    }
    std::vector<const CertifiedCluster*> real_clusters() const {
        std::vector<const CertifiedCluster*> r;
        for (const auto& c : clusters)
            if (c.real_flag == RealFlag::Real) r.push_back(&c);
        return r;
    }
};

struct IsolationOptions {
    std::optional<int> stop;  // required number of clusters
    long start_bits = 53;
    long budget_bits = 2048;
    std::uint64_t seed = 1;
};

namespace detail {

inline std::vector<Cx> initial_guesses(const std::vector<Dyadic>& rep, std::mt19937_64& rng, long prec) {
    const int n = static_cast<int>(rep.size()) - 1;
    double lc = std::fabs(rep.back().to_double()), mx = 0;
    for (int i = 0; i < n; ++i) mx = std::max(mx, std::fabs(rep[static_cast<size_t>(i)].to_double()));
    double rad = 1.0 + mx / lc;
    if (!std::isfinite(rad)) rad = 1e300;
    std::uniform_real_distribution<double> off(0.0, 2.0 * std::numbers::pi / std::max(n, 1));
    double theta0 = off(rng);
    std::vector<Cx> z;
    for (int k = 0; k < n; ++k) {
        double t = theta0 + 2.0 * std::numbers::pi * k / n;
        z.emplace_back(Dyadic::from_double(rad * std::cos(t)).round(prec),
                       Dyadic::from_double(rad * std::sin(t)).round(prec));
    }
    return z;
}

inline void make_distinct(std::vector<Cx>& z, long prec) {
    for (size_t i = 0; i < z.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (z[i] == z[j]) {
                Dyadic eps = z[i].nudge(prec);
                z[i] = z[i] + Cx(eps * Dyadic(static_cast<long>(i + 1)), eps);
                j = static_cast<size_t>(-1);
            }
}

/// Order-lambda Newton from the centroid of a persisting cluster; members are
/// spread on a small circle around the result.
inline void cluster_newton(const std::vector<Dyadic>& rep, std::vector<Cx>& z, const CertifiedCluster& c,
                           long prec) {
    const size_t lam = c.members.size();
    Cx cen;
    for (size_t m : c.members) cen = cen + z[m];
    Dyadic inv = Dyadic::div_down(Dyadic(1), Dyadic(Integer(static_cast<long>(lam))), prec);
    cen = Cx(cen.re * inv, cen.im * inv).round(prec);
    ComplexBox region = c.bounding_box();
    for (int it = 0; it < 4; ++it) {
        Cx g, dg;
        horner2(rep, cen, prec, g, dg);
        if (g.is_zero() || dg.is_zero()) break;
        Cx step = cx_div(g, dg, prec);
        Dyadic l(Integer(static_cast<long>(lam)));
        Cx next = (cen - Cx(step.re * l, step.im * l)).round_guess(prec);
        if (!region.re.contains(next.re) || !region.im.contains(next.im)) break;
        cen = next;
    }
    Dyadic spread;
    for (size_t m : c.members) {
        Cx d = z[m] - cen;
        spread = max(spread, d.re.abs() + d.im.abs());
    }
    spread = max(spread.mul_2exp(-4), cen.nudge(prec)).round_up(8);
    for (size_t k = 0; k < lam; ++k) {
        double t = 0.3 + 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(lam);
        Cx dir(Dyadic::from_double(std::cos(t)), Dyadic::from_double(std::sin(t)));
        z[c.members[k]] = (cen + Cx(spread * dir.re, spread * dir.im)).round_guess(prec);
    }
}

inline bool same_members(const CertifiedCluster& a, const CertifiedCluster& b) { return a.members == b.members; }

}  // namespace detail

/// Precision-doubling driver. Succeeds when the cluster count reaches
/// `stop` (or, without a target, when all clusters are simple) and every
/// cluster has a decided real flag.
inline IsolationResult isolate_complex(const BitstreamSource& source, const IsolationOptions& opt = {}) {
    IsolationResult res;
    std::mt19937_64 rng(opt.seed);
    BitstreamPoly gp = source(opt.start_bits);
    const int n = gp.degree();
    if (n < 1) {
        res.status = (opt.stop && *opt.stop != 0) ? IsolationStatus::Failure : IsolationStatus::Success;
        return res;
    }
    if (opt.stop && (*opt.stop > n || *opt.stop < 1)) return res;
    long bits = opt.start_bits;
    std::vector<Cx> z = detail::initial_guesses(gp.median(), rng, bits);
    detail::make_distinct(z, bits);
    const int steps = 4 * n;
    while (true) {
        std::vector<Dyadic> rep = gp.median();
        for (auto& c : rep) c = c.round(bits + 16);
        std::vector<CertifiedCluster> prev;
        int stall = 0;
        size_t best = 0;
        for (int round = 0; round < 12 + n; ++round) {
            for (int s = 0; s < steps; ++s) z = aberth_step(rep, z, bits, &rng);
            detail::make_distinct(z, bits);
            std::vector<CertifiedCluster> cs = neumaier_certify(gp, z, bits);
            bool target = opt.stop ? static_cast<int>(cs.size()) == *opt.stop : false;
            bool all_simple = std::all_of(cs.begin(), cs.end(), [](const CertifiedCluster& c) { return c.multiplicity == 1; });
            classify_real(cs, target || all_simple, bits);
            bool decided = std::all_of(cs.begin(), cs.end(), [](const CertifiedCluster& c) { return c.real_flag != RealFlag::Undecided; });
            res.clusters = cs;
            res.bits = bits;
            if (decided && (target || (!opt.stop && all_simple))) {
                res.status = IsolationStatus::Success;
                return res;
            }
            for (const auto& c : cs) {
                if (c.multiplicity < 2) continue;
                for (const auto& q : prev)
                    if (detail::same_members(c, q)) detail::cluster_newton(rep, z, c, bits);
            }
            detail::make_distinct(z, bits);
            if (cs.size() > best) {
                best = cs.size();
                stall = 0;
            } else if (++stall >= 3) {
                break;
            }
            prev = std::move(cs);
        }
        if (bits >= opt.budget_bits) break;
        bits = std::min(2 * bits, opt.budget_bits);
        gp = source(bits);
        for (auto& v : z) v = v.round(bits);
    }
    res.status = IsolationStatus::Failure;
    return res;
}

}  // namespace curvekit
