#pragma once

// Real solutions of f = g = 0 for coprime f, g in Z[x, y]: project with
// resultants in both directions, separate every projected real root by a
// disc with a lower bound for |R| on its boundary, and decide each
// candidate pair by interval exclusion or the cofactor inclusion predicate.
// Optional filters (bitstream Descartes, numeric clusters, combinatorial
// counting, horizontal fibers) decide candidates earlier.

#include "cnum.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace curvekit {

/// Roots of one resultant: R = res(f, g; eliminated variable) as a
/// polynomial in the remaining variable.
struct ProjectionSet {
    char direction = 'y';  // eliminated variable
    IntPoly R;
    SquareFreeDecomposition sqf;
    std::vector<AlgebraicNumber> roots;  // sorted, multiplicity = multiplicity in R
    IntPoly h;                           // gcd of the leading coefficients
};

struct IsolatingDisc {
    Dyadic center;
    Dyadic radius;  // 2 r_I at separation time
    Dyadic L;       // |R| > L on the boundary
};

struct Region {
    Dyadic xlo, xhi, ylo, yhi;
};

/// Common factor of f and g (positive total degree), or an empty optional.
/// The check is exact: gcd of the x-contents plus res_y of the
/// y-primitive parts.
inline std::optional<BiPoly> common_factor(const BiPoly& f, const BiPoly& g) {
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("common_factor: zero polynomial");
    IntPoly cf = content_x(f), cg = content_x(g);
    IntPoly c = int_gcd_uni(cf, cg);
    if (c.degree() >= 1) return BiPoly::from_x(c);
    BiPoly a = primitive_part_y(f), b = primitive_part_y(g);
    if (a.deg_y() >= 1 && b.deg_y() >= 1 && biv_resultant_y(a, b).is_zero()) return biv_gcd(a, b);
    return std::nullopt;
}

class CommonFactorError : public std::invalid_argument {
public:
    explicit CommonFactorError(const BiPoly& c)
        : std::invalid_argument("input polynomials share the factor " + c.to_string()), factor(c) {}
    BiPoly factor;
};

/// Resultant eliminating `var` and its real roots.
inline ProjectionSet project(const BiPoly& f, const BiPoly& g, char var, std::uint64_t seed = 1, int prime_bits = 31) {
    ProjectionSet ps;
    ps.direction = var;
    BiPoly F = var == 'y' ? f : f.swap_xy(), G = var == 'y' ? g : g.swap_xy();
    ps.R = biv_resultant_y(F, G, seed, prime_bits);
    if (ps.R.is_zero()) throw std::invalid_argument("zero resultant: the polynomials have a common factor");
    ps.sqf = yun_squarefree(ps.R);
    ps.roots = isolate_decomposition(ps.sqf);
    ps.h = int_gcd_uni(F.lc_y(), G.lc_y());
    return ps;
}

inline std::pair<ProjectionSet, ProjectionSet> biproject(const BiPoly& f, const BiPoly& g, std::uint64_t seed = 1,
                                                         int prime_bits = 31) {
    if (auto c = common_factor(f, g)) throw CommonFactorError(*c);
    return {project(f, g, 'y', seed, prime_bits), project(f, g, 'x', seed, prime_bits)};
}

/// Refine the root until the disc of radius 8 r_I isolates it from all other
/// complex roots of R, and return Delta_{2 r_I}(m_I) with its lower bound.
inline IsolatingDisc separate(const ProjectionSet& ps, AlgebraicNumber& a) {
    const IntPoly& r0 = a.poly();
    const int i0 = a.multiplicity();
    IntPoly d0 = r0.derivative();
    std::vector<const IntPoly*> others;
    for (const auto& fac : ps.sqf.factors)
        if (fac.multiplicity != i0) others.push_back(&fac.factor);
    const Rational three_halves(3, 2);
    auto passes = [&](const Dyadic& m, const Dyadic& r) {
        Dyadic r8 = r.mul_2exp(3);
        if (!tk_test(d0, m, r8, three_halves)) return false;
        for (const IntPoly* p : others)
            if (!tk_test(*p, m, r8, Rational(1))) return false;
        return true;
    };
    Dyadic m, r;
    while (true) {
        if (a.is_exact()) {
            m = a.lo();
            r = Dyadic(1);
            while (!passes(m, r)) r = r.mul_2exp(-1);
            break;
        }
        m = a.mid();
        r = a.width().mul_2exp(-1);
        if (passes(m, r)) break;
        a.qir_step();
    }
    Dyadic v = ps.R.eval(m - r.mul_2exp(1)).abs();
    return {m, r.mul_2exp(1), v.mul_2exp(-i0 - ps.R.degree())};
}

namespace detail {

/// sum |c_i| X^i
inline Dyadic majorant(const IntPoly& p, const Dyadic& X) {
    Dyadic acc;
    for (int i = p.degree(); i >= 0; --i) acc = (acc * X + Dyadic(abs(p[static_cast<size_t>(i)]))).round_up(64);
    return acc;
}

/// Hadamard bounds for the cofactors u, v with res_y(F, G) = u F + v G, for
/// |x| <= X and |y| <= Y.
inline std::pair<Dyadic, Dyadic> hadamard_uv(const BiPoly& F, const BiPoly& G, const Dyadic& X, const Dyadic& Y) {
    const int m = F.deg_y(), n = G.deg_y();
    const int N = m + n;
    if (N == 0) return {Dyadic(), Dyadic()};
    std::vector<Dyadic> fb(static_cast<size_t>(m) + 1), gb(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= m; ++k) fb[static_cast<size_t>(k)] = majorant(F.ycoeff(k), X);
    for (int k = 0; k <= n; ++k) gb[static_cast<size_t>(k)] = majorant(G.ycoeff(k), X);
    // column c holds f_{m - (c - i)} for rows i < n and g_{n - (c - i)} for rows n + i
    Dyadic prod(1);
    for (int c = 0; c + 1 < N; ++c) {
        Dyadic s;
        for (int i = 0; i < n; ++i) {
            int k = m - (c - i);
            if (k >= 0 && k <= m) s += fb[static_cast<size_t>(k)] * fb[static_cast<size_t>(k)];
        }
        for (int i = 0; i < m; ++i) {
            int k = n - (c - i);
            if (k >= 0 && k <= n) s += gb[static_cast<size_t>(k)] * gb[static_cast<size_t>(k)];
        }
        prod = (prod * Dyadic::sqrt_up(s.round_up(64), 64)).round_up(64);
    }
    auto powers = [&Y](int cnt) {
        Dyadic s, y2 = (Y * Y).round_up(64), t(1);
        for (int k = 0; k < cnt; ++k) {
            s += t;
            t = (t * y2).round_up(64);
        }
        return Dyadic::sqrt_up(s.round_up(64), 64);
    };
    Dyadic U = n > 0 ? (prod * powers(n)).round_up(64) : Dyadic();
    Dyadic V = m > 0 ? (prod * powers(m)).round_up(64) : Dyadic();
    return {U, V};
}

/// Coefficients of (1 + t)^d p(a + (b - a) / (1 + t)) for an
/// interval-coefficient p; positive roots correspond to roots in (a, b).
inline std::vector<Interval> descartes_transform(std::vector<Interval> c, const Dyadic& a, const Dyadic& b) {
    const size_t n = c.size();
    for (size_t i = 0; i + 1 < n; ++i)
        for (size_t j = n - 1; j-- > i;) c[j] = c[j] + Interval(a) * c[j + 1];
    Dyadic w = b - a, wk(1);
    for (size_t k = 0; k < n; ++k) {
        c[k] = c[k] * Interval(wk);
        wk *= w;
    }
    std::reverse(c.begin(), c.end());
    for (size_t i = 0; i + 1 < n; ++i)
        for (size_t j = n - 1; j-- > i;) c[j] = c[j] + c[j + 1];
    return c;
}

/// Sign variations when every coefficient sign is decided (exact zeros are
/// skipped); empty if some coefficient straddles zero.
inline std::optional<int> certain_variations(const std::vector<Interval>& c) {
    int v = 0, last = 0;
    for (const auto& x : c) {
        if (x.is_point() && x.lo.is_zero()) continue;
        int s = x.sign();
        if (s == 0) return std::nullopt;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

/// Certifies that the interval-coefficient polynomial has no root in the
/// open interval (a, b) by a zero Descartes count of every polynomial in
/// the family.
inline bool interval_descartes_empty(const std::vector<Interval>& coeffs, const Dyadic& a, const Dyadic& b) {
    if (coeffs.empty()) return false;
    std::vector<Interval> c = descartes_transform(coeffs, a, b);
    bool pos = true, neg = true, strict = false;
    for (const auto& v : c) {
        if (v.lo.sign() < 0) pos = false;
        if (v.hi.sign() > 0) neg = false;
        if (v.sign() != 0) strict = true;
    }
    return strict && (pos || neg);
}

inline bool disc_inside(const ComplexDisc& d, const Dyadic& center, const Dyadic& radius) {
    Dyadic room = radius - d.radius;
    if (room.sign() < 0) return false;
    Dyadic dx = d.center_re - center;
    return dx * dx + d.center_im * d.center_im <= room * room;
}

inline bool cluster_meets_segment(const CertifiedCluster& c, const Interval& seg) {
    for (const auto& d : c.discs) {
        if (!d.meets_real_axis()) continue;
        if (d.center_re + d.radius >= seg.lo && d.center_re - d.radius <= seg.hi) return true;
    }
    return false;
}

}  // namespace detail

enum class CandidateStatus { Undecided, Excluded, Certified };

struct FilterFlags {
    bool bitstream = true;
    bool combinatorial = true;
    bool bidirectional = true;
    bool numeric = true;

    static FilterFlags none() { return {false, false, false, false}; }
};

struct SolveOptions {
    std::optional<Region> region;
    Dyadic width = Dyadic(1).mul_2exp(-32);  // target box width
    FilterFlags filters;
    std::uint64_t seed = 1;
    int prime_bits = 31;
    long numeric_budget = 256;
    std::optional<AlgebraicNumber> fiber;  // restrict to solutions with x = fiber
};

struct Solution {
    AlgebraicNumber x, y;  // multiplicities: in R^(y) and R^(x)
    std::string certified_by;
};

struct SolveStats {
    std::map<std::string, int> excluded;
    std::map<std::string, int> certified;
    int candidates = 0;
    int rounds = 0;
};

struct SolveResult {
    std::vector<Solution> solutions;
    ProjectionSet px;  // R^(y), roots are x-values
    ProjectionSet py;  // R^(x), roots are y-values
    SolveStats stats;
};

namespace detail {

struct Candidate {
    size_t ia, ib;
    Dyadic Uuy, Uvy, Uux, Uvx;
    CandidateStatus status = CandidateStatus::Undecided;
    std::string reason;
};

class Solver {
public:
    Solver(const BiPoly& f, const BiPoly& g, const SolveOptions& opt) : f_(f), g_(g), opt_(opt) {}

    SolveResult run() {
        SolveResult res;
        auto [px, py] = biproject(f_, g_, opt_.seed, opt_.prime_bits);
        px_ = std::move(px);
        py_ = std::move(py);
        select_roots();
        for (size_t i : xs_) dx_[i] = separate(px_, px_.roots[i]);
        for (size_t j : ys_) dy_[j] = separate(py_, py_.roots[j]);
        const BiPoly fs = f_.swap_xy(), gs = g_.swap_xy();
        for (size_t i : xs_)
            for (size_t j : ys_) {
                Candidate c{i, j, {}, {}, {}, {}, CandidateStatus::Undecided, {}};
                Dyadic X = dx_[i].center.abs() + dx_[i].radius, Y = dy_[j].center.abs() + dy_[j].radius;
                std::tie(c.Uuy, c.Uvy) = hadamard_uv(f_, g_, X, Y);
                std::tie(c.Uux, c.Uvx) = hadamard_uv(fs, gs, Y, X);
                cands_.push_back(std::move(c));
            }
        stats_.candidates = static_cast<int>(cands_.size());
        if (opt_.filters.numeric) {
            numeric_filter(false);
        }
        combinatorial();
        if (opt_.filters.bidirectional) {
            if (opt_.filters.numeric) numeric_filter(true);
            if (opt_.filters.bitstream) bitstream_filter(true);
            combinatorial();
        }
        while (undecided() > 0) {
            ++stats_.rounds;
            if (opt_.filters.bitstream) bitstream_filter(false);
            for (auto& c : cands_) {
                if (c.status != CandidateStatus::Undecided) continue;
                validate(c);
            }
            combinatorial();
            if (undecided() == 0) break;
            std::vector<bool> ra(px_.roots.size()), rb(py_.roots.size());
            for (const auto& c : cands_)
                if (c.status == CandidateStatus::Undecided) ra[c.ia] = rb[c.ib] = true;
            for (size_t i = 0; i < ra.size(); ++i)
                if (ra[i]) px_.roots[i].qir_step();
            for (size_t j = 0; j < rb.size(); ++j)
                if (rb[j]) py_.roots[j].qir_step();
        }
        for (const auto& c : cands_) {
            if (c.status != CandidateStatus::Certified) continue;
            AlgebraicNumber x = px_.roots[c.ia], y = py_.roots[c.ib];
            x.refine_to(opt_.width);
            y.refine_to(opt_.width);
            res.solutions.push_back({x, y, c.reason});
        }
        res.px = std::move(px_);
        res.py = std::move(py_);
        res.stats = stats_;
        return res;
    }

private:
    size_t undecided() const {
        size_t k = 0;
        for (const auto& c : cands_) k += c.status == CandidateStatus::Undecided;
        return k;
    }

    void decide(Candidate& c, CandidateStatus s, const std::string& why) {
        c.status = s;
        c.reason = why;
        if (s == CandidateStatus::Excluded) ++stats_.excluded[why];
        else ++stats_.certified[why];
    }

    static int side(AlgebraicNumber& a, const Dyadic& lo, const Dyadic& hi) {
        AlgebraicNumber l = AlgebraicNumber::from_dyadic(lo), h = AlgebraicNumber::from_dyadic(hi);
        if (compare(a, l) < 0) return -1;
        if (compare(a, h) > 0) return 1;
        return 0;
    }

    void select_roots() {
        dropped_y_ = false;
        for (size_t i = 0; i < px_.roots.size(); ++i) {
            if (opt_.region && side(px_.roots[i], opt_.region->xlo, opt_.region->xhi) != 0) continue;
            if (opt_.fiber) {
                AlgebraicNumber fx = *opt_.fiber;
                if (compare(px_.roots[i], fx) != 0) continue;
            }
            xs_.push_back(i);
        }
        for (size_t j = 0; j < py_.roots.size(); ++j) {
            if (opt_.region && side(py_.roots[j], opt_.region->ylo, opt_.region->yhi) != 0) {
                dropped_y_ = true;
                continue;
            }
            ys_.push_back(j);
        }
    }

    void validate(Candidate& c) {
        AlgebraicNumber& a = px_.roots[c.ia];
        AlgebraicNumber& b = py_.roots[c.ib];
        Interval fi = interval_eval_biv(f_, a.interval(), b.interval());
        Interval gi = interval_eval_biv(g_, a.interval(), b.interval());
        if (!fi.contains_zero() || !gi.contains_zero()) {
            decide(c, CandidateStatus::Excluded, "interval");
            return;
        }
        Dyadic x0 = a.is_exact() ? a.lo() : a.mid(), y0 = b.is_exact() ? b.lo() : b.mid();
        Dyadic fv = f_.eval(x0, y0).abs(), gv = g_.eval(x0, y0).abs();
        if (fv.is_zero() && gv.is_zero() && a.is_exact() && b.is_exact()) {
            decide(c, CandidateStatus::Certified, "exact");
            return;
        }
        bool A = c.Uuy * fv + c.Uvy * gv < dx_[c.ia].L;
        bool B = c.Uux * fv + c.Uvx * gv < dy_[c.ib].L;
        if (A && B) decide(c, CandidateStatus::Certified, "inclusion");
    }

    /// Rule (i): enough certified solutions on a fiber exclude the rest.
    /// Rule (ii): odd multiplicity, no solution at infinity and a single
    /// surviving candidate certify it.
    void combinatorial() {
        if (!opt_.filters.combinatorial) return;
        std::map<size_t, std::vector<Candidate*>> fib;
        for (auto& c : cands_) fib[c.ia].push_back(&c);
        for (auto& [ia, cs] : fib) {
            AlgebraicNumber& a = px_.roots[ia];
            int cert = 0, und = 0;
            for (auto* c : cs) {
                cert += c->status == CandidateStatus::Certified;
                und += c->status == CandidateStatus::Undecided;
            }
            if (und == 0) continue;
            if (cert >= a.multiplicity()) {
                for (auto* c : cs)
                    if (c->status == CandidateStatus::Undecided) decide(*c, CandidateStatus::Excluded, "combinatorial");
                continue;
            }
            if (dropped_y_ || cert != 0 || und != 1 || a.multiplicity() % 2 == 0) continue;
            if (sign_at(px_.h, a) == 0) continue;
            for (auto* c : cs)
                if (c->status == CandidateStatus::Undecided) decide(*c, CandidateStatus::Certified, "combinatorial");
        }
    }

    /// Fiber polynomials along x = alpha (or y = beta when horizontal).
    void bitstream_filter(bool horizontal) {
        const BiPoly& F = horizontal ? fs() : f_;
        const BiPoly& G = horizontal ? gs() : g_;
        for (auto& c : cands_) {
            if (c.status != CandidateStatus::Undecided) continue;
            AlgebraicNumber& a = horizontal ? py_.roots[c.ib] : px_.roots[c.ia];
            AlgebraicNumber& b = horizontal ? px_.roots[c.ia] : py_.roots[c.ib];
            if (b.is_exact()) continue;
            for (const BiPoly* P : {&F, &G}) {
                std::vector<Interval> co;
                for (const auto& q : P->ycoeffs()) co.push_back(interval_eval_uni(q, a.interval()));
                if (interval_descartes_empty(co, b.lo(), b.hi())) {
                    decide(c, CandidateStatus::Excluded, horizontal ? "bidirectional" : "bitstream");
                    break;
                }
            }
        }
    }

    void numeric_filter(bool horizontal) {
        const BiPoly& F = horizontal ? fs() : f_;
        const BiPoly& G = horizontal ? gs() : g_;
        std::map<size_t, std::vector<Candidate*>> fib;
        for (auto& c : cands_)
            if (c.status == CandidateStatus::Undecided) fib[horizontal ? c.ib : c.ia].push_back(&c);
        for (auto& [k, cs] : fib) {
            AlgebraicNumber& a = horizontal ? py_.roots[k] : px_.roots[k];
            int df = fiber_degree(F, a), dg = fiber_degree(G, a);
            if (df < 0 || dg < 0) continue;
            IsolationOptions io;
            io.budget_bits = opt_.numeric_budget;
            io.seed = opt_.seed;
            IsolationResult rf = isolate_complex(fiber_source(F, a), io);
            IsolationResult rg = isolate_complex(fiber_source(G, a), io);
            std::vector<std::pair<const CertifiedCluster*, const CertifiedCluster*>> pairs;
            for (const auto& cf : rf.clusters)
                for (const auto& cg : rg.clusters)
                    if (cf.overlaps(cg)) pairs.emplace_back(&cf, &cg);
            const IntPoly& h = horizontal ? py_.h : px_.h;
            bool no_infinity = sign_at(h, a) != 0;
            for (auto* c : cs) {
                if (c->status != CandidateStatus::Undecided) continue;
                AlgebraicNumber& b = horizontal ? px_.roots[c->ia] : py_.roots[c->ib];
                const IsolatingDisc& db = horizontal ? dx_[c->ia] : dy_[c->ib];
                Interval seg = b.interval();
                bool any = false;
                for (auto [cf, cg] : pairs)
                    if (cluster_meets_segment(*cf, seg) && cluster_meets_segment(*cg, seg)) any = true;
                if (!any) {
                    decide(*c, CandidateStatus::Excluded, horizontal ? "bidirectional" : "numeric");
                    continue;
                }
                if (no_infinity && pairs.size() == 1 && !horizontal) {
                    const CertifiedCluster* simple = pairs[0].first->multiplicity == 1    ? pairs[0].first
                                                     : pairs[0].second->multiplicity == 1 ? pairs[0].second
                                                                                          : nullptr;
                    if (!simple) continue;
                    bool inside = true;
                    for (const auto& d : simple->discs) inside = inside && disc_inside(d, db.center, db.radius);
                    if (inside) decide(*c, CandidateStatus::Certified, "numeric");
                }
            }
        }
    }

    const BiPoly& fs() {
        if (!fs_) fs_ = f_.swap_xy();
        return *fs_;
    }
    const BiPoly& gs() {
        if (!gs_) gs_ = g_.swap_xy();
        return *gs_;
    }

    BiPoly f_, g_;
    std::optional<BiPoly> fs_, gs_;
    SolveOptions opt_;
    ProjectionSet px_, py_;
    std::vector<size_t> xs_, ys_;
    bool dropped_y_ = false;
    std::map<size_t, IsolatingDisc> dx_, dy_;
    std::vector<Candidate> cands_;
    SolveStats stats_;
};

}  // namespace detail

/// All real solutions of f = g = 0 (inside the region, if given), sorted by x
/// then y. Each solution box I(alpha) x I(beta) contains exactly one
/// solution and the boxes are pairwise disjoint.
inline SolveResult solve(const BiPoly& f, const BiPoly& g, const SolveOptions& opt = {}) {
    return detail::Solver(f, g, opt).run();
}

}  // namespace curvekit
