#pragma once

// Geometric-topological analysis of a planar curve f = 0: project the
// x-critical values, lift every critical and intermediate fiber, and connect
// consecutive fibers into a graph whose straight-line embedding is isotopic
// to the curve. Critical fibers are lifted by the numeric solver with the
// Teissier bound n+ as target (NT) or by repeated Bisolve calls plus a
// modified bitstream Descartes (BS).

#include "bisolve.hpp"

#include <deque>
#include <numeric>

namespace curvekit {

enum class LiftMethod { NT, BS, Intermediate };
enum class LiftPolicy { Auto, NT, BS };
enum class AnalysisMode { GeoTop, TopNT };

inline const char* to_string(LiftMethod m) {
    switch (m) {
        case LiftMethod::NT: return "nt";
        case LiftMethod::BS: return "bs";
        default: return "intermediate";
    }
}

struct FiberPoint {
    Interval y;
    int multiplicity = 1;
};

struct FiberInfo {
    AlgebraicNumber alpha;
    bool critical = false;
    bool vertical_line = false;
    std::vector<FiberPoint> points;  // ascending, pairwise disjoint
    int degree = 0;                  // deg f(alpha, y)
    int n_plus = -1;                 // critical fibers only
    LiftMethod method = LiftMethod::Intermediate;

    size_t m_alpha() const { return points.size(); }
};

struct GenericityCertificate {
    long N_minus = 0;
    long N_plus = 0;
    std::uint64_t prime = 0;
    bool generic = false;
    bool gated = false;  // precondition failed (non-constant leading coefficient)
};

class NotSquareFreeError : public std::invalid_argument {
public:
    explicit NotSquareFreeError(const BiPoly& c)
        : std::invalid_argument("polynomial is not square-free; repeated factor " + c.to_string()), factor(c) {}
    BiPoly factor;
};

class LiftFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Per-curve data shared by all fibers.
struct CurveData {
    BiPoly input;
    IntPoly content;  // vertical lines
    BiPoly f;         // input / content, primitive
    BiPoly fx, fy;
    IntPoly R;  // res(f, f_y; y)
    SquareFreeDecomposition Rsqf;
    IntPoly Rstar;
    IntPoly Q;  // res(f_x*, f_y*; y)
    SquareFreeDecomposition Qsqf;
    std::vector<AlgebraicNumber> critical;
    std::vector<AlgebraicNumber> vertical;  // real roots of content
    int ny = 0;
};

inline CurveData prepare_curve(const BiPoly& input, std::uint64_t seed = 1, int prime_bits = 31) {
    if (input.is_zero()) throw std::invalid_argument("zero polynomial");
    CurveData cd;
    cd.input = input;
    cd.content = content_x(input);
    if (cd.content.degree() >= 1) {
        SquareFreeDecomposition d = yun_squarefree(cd.content);
        for (const auto& fac : d.factors)
            if (fac.multiplicity > 1) throw NotSquareFreeError(BiPoly::from_x(fac.factor));
        cd.vertical = isolate_decomposition(d);
        for (auto& v : cd.vertical) v.set_multiplicity(1);
    }
    cd.f = primitive_part_y(input);
    cd.f = cd.f.div_scalar(cd.f.int_content());
    cd.ny = cd.f.deg_y();
    if (cd.ny == 0) {
        cd.R = IntPoly::constant(1);
        cd.Rstar = cd.R;
        cd.Q = cd.R;
        return cd;
    }
    cd.fx = cd.f.deriv_x();
    cd.fy = cd.f.deriv_y();
    BiPoly g = biv_gcd(cd.f, cd.fy);
    if (g.deg_y() >= 1) throw NotSquareFreeError(g);
    cd.R = biv_resultant_y(cd.f, cd.fy, seed, prime_bits);
    cd.Rsqf = yun_squarefree(cd.R);
    cd.Rstar = cd.Rsqf.squarefree_part();
    cd.critical = isolate_decomposition(cd.Rsqf);
    if (cd.fx.is_zero()) {
        cd.Q = IntPoly::constant(1);
    } else {
        BiPoly h = biv_gcd(cd.fx, cd.fy), a, b;
        if (!try_divide_bi(cd.fx, h, a) || !try_divide_bi(cd.fy, h, b))
            throw std::logic_error("gcd does not divide the partial derivatives");
        cd.Q = biv_resultant_y(a, b, seed, prime_bits);
        if (cd.Q.is_zero()) throw std::logic_error("partial derivatives share a factor after gcd removal");
    }
    cd.Qsqf = yun_squarefree(cd.Q);
    return cd;
}

inline int multiplicity_at(const SquareFreeDecomposition& d, const AlgebraicNumber& a) {
    for (const auto& fac : d.factors)
        if (is_root_of(fac.factor, a)) return fac.multiplicity;
    return 0;
}

/// Teissier bound on the number of distinct complex roots of f(alpha, y).
inline int compute_nalpha_plus(const CurveData& cd, const AlgebraicNumber& alpha) {
    int d = fiber_degree(cd.f, alpha);
    if (d != cd.ny) return d;
    return cd.ny - multiplicity_at(cd.Rsqf, alpha) + multiplicity_at(cd.Qsqf, alpha);
}

/// Compare N- (modular subresultant profile) with N+ (bound on the sum of
/// n+ over all complex critical values) for one prime.
inline GenericityCertificate genericity_check_prime(const CurveData& cd, std::uint64_t p) {
    GenericityCertificate c;
    c.prime = p;
    if (cd.ny >= 1 && cd.f.lc_y().degree() > 0) {
        c.gated = true;
        return c;
    }
    if (cd.Rstar.degree() < 1) {
        c.generic = true;
        return c;
    }
    ModPoly rs = ModPoly::from(cd.Rstar, p), q = ModPoly::from(cd.Q, p);
    if (rs.degree() != cd.Rstar.degree() || q.degree() != cd.Q.degree()) throw std::runtime_error("unlucky prime");
    long common = 0;
    while (q.degree() >= 1) {
        ModPoly g = zp_gcd(q, rs);
        if (g.degree() < 1) break;
        common += g.degree();
        ModPoly quo, rem;
        mod_divrem(q, g, quo, rem);
        q = quo;
    }
    c.N_plus = static_cast<long>(cd.Rstar.degree()) * cd.ny - cd.R.degree() + common;
    SubresultantProfile prof = modular_subres_profile(cd.f, cd.fy, cd.Rstar, p);
    for (size_t i = 1; i < prof.d.size(); ++i) c.N_minus += static_cast<long>(cd.ny - static_cast<int>(i)) * prof.d[i];
    c.generic = c.N_minus == c.N_plus;
    return c;
}

/// Draws primes from the seeded stream; unlucky primes are redrawn up to 5
/// times before the verdict is inconclusive.
inline GenericityCertificate genericity_check(const CurveData& cd, std::uint64_t seed = 1, int prime_bits = 31) {
    PrimeStream ps(seed ^ 0x9e3779b97f4a7c15ULL, prime_bits);
    for (int attempt = 0; attempt < 6; ++attempt) {
        std::uint64_t p = ps.next();
        try {
            return genericity_check_prime(cd, p);
        } catch (const std::runtime_error&) {
            continue;
        }
    }
    return {};
}

namespace detail {

inline Dyadic cauchy_bound_pow2(const std::vector<Interval>& c) {
    Dyadic lead = c.back().mig();
    Dyadic m;
    for (size_t i = 0; i + 1 < c.size(); ++i) m = max(m, c[i].mag());
    Dyadic q = Dyadic::div_up(m, lead, 64) + Dyadic(1);
    Dyadic b(1);
    while (b <= q) b = b.mul_2exp(1);
    return b;
}

/// Make closed root intervals strictly disjoint by bisection.
inline void separate_roots(std::vector<AlgebraicNumber>& rs) {
    for (size_t i = 0; i + 1 < rs.size(); ++i)
        while (!(rs[i].hi() < rs[i + 1].lo())) {
            rs[i].bisect();
            rs[i + 1].bisect();
        }
}

/// Real roots of f(q, y) for dyadic q with f(q, y) square-free.
inline std::vector<AlgebraicNumber> roots_at(const BiPoly& f, const Dyadic& q) {
    IntPoly p = f.eval_x_scaled(q);
    if (p.is_zero()) throw std::logic_error("curve contains the vertical line at a separator");
    if (p.degree() < 1) return {};
    SquareFreeDecomposition d = yun_squarefree(p);
    if (d.factors.size() != 1 || d.factors[0].multiplicity != 1)
        throw std::logic_error("fiber polynomial at a separator is not square-free");
    std::vector<AlgebraicNumber> rs = descartes_isolate(p);
    separate_roots(rs);
    return rs;
}

}  // namespace detail

inline FiberInfo lift_intermediate(const CurveData& cd, const Dyadic& q) {
    FiberInfo fi;
    fi.alpha = AlgebraicNumber::from_dyadic(q);
    fi.degree = cd.ny;
    for (auto& r : detail::roots_at(cd.f, q)) fi.points.push_back({r.interval(), 1});
    return fi;
}

struct LiftOptions {
    LiftPolicy policy = LiftPolicy::Auto;
    long budget_bits = 2048;
    long precision = 53;
    std::uint64_t seed = 1;
    int prime_bits = 31;
};

/// Numeric lift: succeeds iff the solver certifies n+ clusters.
inline std::optional<FiberInfo> lift_nt(const CurveData& cd, const AlgebraicNumber& alpha, int n_plus,
                                        const LiftOptions& opt = {}) {
    FiberInfo fi;
    fi.alpha = alpha;
    fi.critical = true;
    fi.degree = fiber_degree(cd.f, alpha);
    fi.n_plus = n_plus;
    fi.method = LiftMethod::NT;
    if (fi.degree < 0) throw std::logic_error("vertical component in reduced curve");
    IsolationOptions io;
    io.stop = n_plus;
    io.budget_bits = opt.budget_bits;
    io.start_bits = opt.precision;
    io.seed = opt.seed;
    IsolationResult r = isolate_complex(fiber_source(cd.f, alpha), io);
    if (!r.ok()) return std::nullopt;
    for (const auto* c : r.real_clusters()) fi.points.push_back({c->real_trace, c->multiplicity});
    std::sort(fi.points.begin(), fi.points.end(), [](const FiberPoint& a, const FiberPoint& b) { return a.y.lo < b.y.lo; });
    for (size_t i = 0; i + 1 < fi.points.size(); ++i)
        if (!(fi.points[i].y.hi < fi.points[i + 1].y.lo)) return std::nullopt;
    return fi;
}

/// Shared state for BS lifts of one curve: cached Bisolve runs.
class BsContext {
public:
    explicit BsContext(const CurveData& cd, std::uint64_t seed = 1, int prime_bits = 31)
        : cd_(cd), seed_(seed), prime_bits_(prime_bits) {}

    const std::vector<Solution>& solutions(const BiPoly& P, const BiPoly& S) {
        std::string key = P.to_string() + "|" + S.to_string();
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        SolveOptions o;
        o.seed = seed_;
        o.prime_bits = prime_bits_;
        return cache_.emplace(key, solve(P, S, o).solutions).first->second;
    }

    /// Is (a, b) a common solution of P and S? P and S coprime.
    bool on_solutions(const BiPoly& P, const BiPoly& S, AlgebraicNumber a, AlgebraicNumber b) {
        for (const auto& s : solutions(P, S)) {
            AlgebraicNumber x = s.x, y = s.y;
            if (compare(x, a) == 0 && compare(y, b) == 0) return true;
        }
        return false;
    }

    /// Exact test P(a, b) = 0 for a point (a, b) on the square-free curve S.
    bool vanishes(const BiPoly& P, const BiPoly& S, AlgebraicNumber a, AlgebraicNumber b) {
        if (P.is_zero()) return true;
        if (P.deg_y() == 0 && P.deg_x() <= 0) return false;
        for (int i = 0; i < 6; ++i) {
            if (!interval_eval_biv(P, a.interval(), b.interval()).contains_zero()) return false;
            a.qir_step();
            b.qir_step();
        }
        BiPoly c = biv_gcd(P, S);
        if (c.deg_y() == 0 && c.deg_x() <= 0) return on_solutions(P, S, a, b);
        BiPoly S2, P2;
        if (!try_divide_bi(S, c, S2) || !try_divide_bi(P, c, P2)) throw std::logic_error("gcd does not divide");
        bool cv;
        if (S2.deg_y() == 0 && S2.deg_x() <= 0) {
            cv = true;
        } else if (on_solutions(c, S2, a, b)) {
            cv = true;
        } else {
            // exactly one of c, S2 vanishes at the point
            while (true) {
                if (!interval_eval_biv(c, a.interval(), b.interval()).contains_zero()) {
                    cv = false;
                    break;
                }
                if (!interval_eval_biv(S2, a.interval(), b.interval()).contains_zero()) {
                    cv = true;
                    break;
                }
                a.qir_step();
                b.qir_step();
            }
        }
        if (cv) return true;
        return vanishes(P2, S, a, b);
    }

    const CurveData& curve() const { return cd_; }

private:
    const CurveData& cd_;
    std::uint64_t seed_;
    int prime_bits_;
    std::map<std::string, std::vector<Solution>> cache_;
};

namespace detail {

class FiberBdc {
public:
    FiberBdc(const BiPoly& f, AlgebraicNumber& alpha, int degree) : f_(f), alpha_(alpha), d_(degree) {
        while (coeffs().back().contains_zero()) alpha_.qir_step();
    }

    std::vector<Interval> coeffs() const {
        std::vector<Interval> c;
        for (int k = 0; k <= d_; ++k) c.push_back(interval_eval_uni(f_.ycoeff(k), alpha_.interval()));
        return c;
    }
    void refine() { alpha_.qir_step(); }
    bool exact() const { return alpha_.is_exact(); }

    std::optional<int> variations(const Dyadic& a, const Dyadic& b) const {
        return certain_variations(descartes_transform(coeffs(), a, b));
    }

    /// A point of (a, b) that is certainly not a root.
    Dyadic split(const Dyadic& a, const Dyadic& b) {
        static const int num[] = {8, 7, 9, 6, 10, 5, 11, 4, 12, 3, 13};
        Dyadic w = b - a;
        for (int round = 0; round < 200; ++round) {
            auto c = coeffs();
            int level = 4 + round / 20;
            for (int k : num) {
                Dyadic t = a + w * Dyadic(Integer(k * (1 << (level - 4))), -level);
                if (!(a < t && t < b)) continue;
                if (!interval_eval_coeffs(c, Interval(t)).contains_zero()) return t;
            }
            refine();
        }
        throw std::runtime_error("no root-free split point found");
    }

private:
    const BiPoly& f_;
    AlgebraicNumber& alpha_;
    int d_;
};

}  // namespace detail

/// Complete lift of the fiber at a critical value.
inline FiberInfo lift_bs(BsContext& ctx, const AlgebraicNumber& alpha_in) {
    const CurveData& cd = ctx.curve();
    AlgebraicNumber alpha = alpha_in;
    FiberInfo fi;
    fi.alpha = alpha_in;
    fi.critical = true;
    fi.method = LiftMethod::BS;
    fi.degree = fiber_degree(cd.f, alpha);
    if (fi.degree < 0) throw std::logic_error("vertical component in reduced curve");
    if (fi.degree == 0) return fi;

    // multiple roots: solutions of f = f_y = 0 above alpha
    struct Multiple {
        AlgebraicNumber beta;
        int k;
    };
    std::vector<Multiple> mult;
    for (const auto& s : ctx.solutions(cd.f, cd.fy)) {
        AlgebraicNumber x = s.x;
        if (compare(x, alpha) != 0) continue;
        AlgebraicNumber beta = s.y;
        int k = 2;
        BiPoly D = cd.fy.deriv_y();
        while (ctx.vanishes(D, cd.f, alpha, beta)) {
            ++k;
            D = D.deriv_y();
        }
        // refine until the k-th derivative has no zero over the box
        while (interval_eval_biv(D, alpha.interval(), beta.interval()).contains_zero()) {
            alpha.qir_step();
            beta.qir_step();
        }
        mult.push_back({beta, k});
    }

    // ordinary roots: bitstream Descartes with the discard rules
    detail::FiberBdc bdc(cd.f, alpha, fi.degree);
    auto inside = [](const Dyadic& a, const Dyadic& b, const AlgebraicNumber& m) {
        return m.lo() >= a && m.hi() <= b && (!m.is_exact() || (a < m.lo() && m.hi() < b));
    };
    auto meets = [](const Dyadic& a, const Dyadic& b, const AlgebraicNumber& m) { return !(m.hi() < a || b < m.lo()); };
    Dyadic B = detail::cauchy_bound_pow2(bdc.coeffs());
    std::deque<std::pair<Dyadic, Dyadic>> work{{-B, B}};
    std::vector<std::pair<Dyadic, Dyadic>> ordinary;
    while (!work.empty()) {
        auto [a, b] = work.front();
        work.pop_front();
        bool discard = false;
        for (const auto& m : mult)
            if (!m.beta.is_exact() && m.beta.lo() <= a && b <= m.beta.hi()) discard = true;
        if (discard) continue;
        std::optional<int> v = bdc.variations(a, b);
        if (v) {
            if (*v == 0) continue;
            int contained = 0, touched = 0, kj = 0;
            for (const auto& m : mult) {
                if (inside(a, b, m.beta)) {
                    ++contained;
                    kj = m.k;
                }
                if (meets(a, b, m.beta)) ++touched;
            }
            if (contained == 1 && touched == 1 && *v <= kj) continue;
            if (*v == 1 && touched == 0) {
                ordinary.emplace_back(a, b);
                continue;
            }
        } else {
            bdc.refine();
        }
        Dyadic c = bdc.split(a, b);
        work.emplace_back(a, c);
        work.emplace_back(c, b);
    }
    // shrink ordinary intervals that touch a neighbour
    std::sort(ordinary.begin(), ordinary.end());
    auto halve = [&bdc](std::pair<Dyadic, Dyadic>& I) {
        while (true) {
            Dyadic c = bdc.split(I.first, I.second);
            auto v = bdc.variations(I.first, c);
            if (v && *v == 1) {
                I.second = c;
                return;
            }
            if (v && *v == 0) {
                I.first = c;
                return;
            }
            bdc.refine();
        }
    };
    for (size_t i = 0; i + 1 < ordinary.size(); ++i)
        while (!(ordinary[i].second < ordinary[i + 1].first)) {
            halve(ordinary[i]);
            halve(ordinary[i + 1]);
        }
    for (const auto& m : mult) fi.points.push_back({m.beta.interval(), m.k});
    for (const auto& o : ordinary) fi.points.push_back({Interval(o.first, o.second), 1});
    std::sort(fi.points.begin(), fi.points.end(), [](const FiberPoint& a, const FiberPoint& b) { return a.y.lo < b.y.lo; });
    fi.n_plus = compute_nalpha_plus(cd, alpha_in);
    return fi;
}

/// NT first, BS on failure (policy Auto); NT-only raises LiftFailure.
inline FiberInfo lift(BsContext& ctx, const AlgebraicNumber& alpha, const LiftOptions& opt = {}) {
    const CurveData& cd = ctx.curve();
    if (opt.policy != LiftPolicy::BS) {
        int np = compute_nalpha_plus(cd, alpha);
        if (auto r = lift_nt(cd, alpha, np, opt)) return *r;
        if (opt.policy == LiftPolicy::NT) throw LiftFailure("numeric lift failed at x ~ " + std::to_string(alpha.approx()));
    }
    return lift_bs(ctx, alpha);
}

enum class VertexKind { Critical, Intermediate, MinusInfinity, PlusInfinity };

inline const char* to_string(VertexKind k) {
    switch (k) {
        case VertexKind::Critical: return "critical";
        case VertexKind::Intermediate: return "intermediate";
        case VertexKind::MinusInfinity: return "-inf";
        default: return "+inf";
    }
}

struct Vertex {
    size_t fiber = 0;
    int point = -1;  // index into the fiber points, -1 for infinite vertices
    VertexKind kind = VertexKind::Intermediate;
};

struct TopologyGraph {
    std::vector<Vertex> vertices;
    std::vector<std::pair<size_t, size_t>> edges;

    int degree(size_t v) const {
        int d = 0;
        for (const auto& e : edges) d += (e.first == v) + (e.second == v);
        return d;
    }
    size_t components() const {
        std::vector<size_t> parent(vertices.size());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&parent](size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        size_t c = vertices.size();
        for (const auto& e : edges) {
            size_t a = find(e.first), b = find(e.second);
            if (a != b) {
                parent[a] = b;
                --c;
            }
        }
        return c;
    }
    long cycle_rank() const {
        return static_cast<long>(edges.size()) - static_cast<long>(vertices.size()) + static_cast<long>(components());
    }
};

struct AnalyzeOptions {
    AnalysisMode mode = AnalysisMode::GeoTop;
    LiftOptions lift;
    std::uint64_t shear_seed = 1;
};

struct CurveAnalysis {
    BiPoly input;
    BiPoly analyzed;  // sheared input in top-nt mode
    std::optional<long> shear;
    CurveData data;
    GenericityCertificate certificate;
    std::vector<FiberInfo> fibers;  // alternating intermediate / event fibers
    TopologyGraph graph;
    std::vector<AlgebraicNumber> vertical_lines;
};

namespace detail {

/// For each arc of the intermediate fiber on one side of event fiber ev, the
/// index of the event point it ends in, or -1 / -2 for -inf / +inf.
inline std::vector<int> match_arcs(const CurveData& cd, FiberInfo& ev, const FiberInfo& side, bool right,
                                   const Dyadic& q_left, const Dyadic& q_right) {
    const size_t mI = side.points.size(), ma = ev.points.size();
    std::vector<int> target(mI);
    int critical = 0;
    size_t i0 = 0;
    for (size_t i = 0; i < ma; ++i)
        if (ev.points[i].multiplicity > 1) {
            ++critical;
            i0 = i;
        }
    if (ev.degree == cd.ny && critical <= 1 && (critical == 1 || mI == ma)) {
        if (critical == 0) {
            for (size_t j = 0; j < mI; ++j) target[j] = static_cast<int>(j);
            return target;
        }
        if (mI + 1 < ma) throw std::logic_error("fewer arcs than regular fiber points");
        for (size_t j = 0; j < mI; ++j) {
            if (j < i0) target[j] = static_cast<int>(j);
            else if (j + ma >= mI + i0 + 1) target[j] = static_cast<int>(j + ma - mI);
            else target[j] = static_cast<int>(i0);
        }
        return target;
    }
    // separators t_0 < y_0 < t_1 < ... < y_{m-1} < t_m
    std::vector<Dyadic> t;
    if (ma == 0) {
        t.push_back(Dyadic());
    } else {
        t.push_back(ev.points.front().y.lo - Dyadic(1));
        for (size_t i = 0; i + 1 < ma; ++i) t.push_back(simplest_between(ev.points[i].y.hi, ev.points[i + 1].y.lo));
        t.push_back(ev.points.back().y.hi + Dyadic(1));
    }
    AlgebraicNumber& a = ev.alpha;
    Dyadic lo, hi;
    Dyadic delta = min(a.lo() - q_left, q_right - a.hi()).half();
    while (true) {
        lo = a.is_exact() ? a.lo() - delta : a.lo();
        hi = a.is_exact() ? a.hi() + delta : a.hi();
        bool clear = true;
        for (const auto& ti : t)
            if (interval_eval_biv(cd.f, Interval(lo, hi), Interval(ti)).contains_zero()) clear = false;
        if (clear) break;
        if (a.is_exact()) delta = delta.half();
        else a.qir_step();
    }
    Dyadic b = right ? hi : lo;
    std::vector<AlgebraicNumber> gam = roots_at(cd.f, b);
    if (gam.size() != mI) throw std::logic_error("arc count changed inside an isolating interval");
    for (size_t j = 0; j < mI; ++j) {
        AlgebraicNumber& g = gam[j];
        auto straddles = [&]() {
            for (const auto& ti : t)
                if (g.lo() <= ti && ti <= g.hi()) return true;
            return false;
        };
        while (straddles()) g.qir_step();
        size_t below = 0;
        for (const auto& ti : t) below += ti < g.lo();
        if (below == 0) target[j] = -1;
        else if (below == t.size()) target[j] = -2;
        else target[j] = static_cast<int>(below - 1);
    }
    return target;
}

}  // namespace detail

/// Build the graph over the fiber sequence I_0, E_1, I_1, ..., E_k, I_k.
inline TopologyGraph connect(const CurveData& cd, std::vector<FiberInfo>& fibers, const std::vector<Dyadic>& seps) {
    TopologyGraph g;
    std::vector<std::vector<size_t>> vid(fibers.size());
    for (size_t k = 0; k < fibers.size(); ++k)
        for (size_t i = 0; i < fibers[k].points.size(); ++i) {
            vid[k].push_back(g.vertices.size());
            g.vertices.push_back(
                {k, static_cast<int>(i), fibers[k].critical || fibers[k].vertical_line ? VertexKind::Critical
                                                                                        : VertexKind::Intermediate});
        }
    auto infinite = [&g](size_t k, bool plus) {
        g.vertices.push_back({k, -1, plus ? VertexKind::PlusInfinity : VertexKind::MinusInfinity});
        return g.vertices.size() - 1;
    };
    for (size_t k = 1; k + 1 < fibers.size(); k += 2) {
        FiberInfo& ev = fibers[k];
        const Dyadic& ql = seps[k / 2];
        const Dyadic& qr = seps[k / 2 + 1];
        for (bool right : {false, true}) {
            size_t s = right ? k + 1 : k - 1;
            std::vector<int> tg = detail::match_arcs(cd, ev, fibers[s], right, ql, qr);
            for (size_t j = 0; j < tg.size(); ++j) {
                size_t to = tg[j] >= 0 ? vid[k][static_cast<size_t>(tg[j])] : infinite(k, tg[j] == -2);
                g.edges.emplace_back(vid[s][j], to);
            }
        }
        if (ev.vertical_line) {
            size_t prev = infinite(k, false);
            for (size_t v : vid[k]) {
                g.edges.emplace_back(prev, v);
                prev = v;
            }
            g.edges.emplace_back(prev, infinite(k, true));
        }
    }
    return g;
}

namespace detail {

inline CurveAnalysis analyze_prepared(CurveData cd, const AnalyzeOptions& opt, LiftPolicy policy) {
    CurveAnalysis out;
    out.input = cd.input;
    out.analyzed = cd.input;
    out.certificate = genericity_check(cd, opt.lift.seed, opt.lift.prime_bits);
    // events: critical values and vertical lines, merged by exact comparison
    struct Event {
        AlgebraicNumber alpha;
        bool critical = false, vertical = false;
    };
    std::vector<Event> ev;
    for (const auto& c : cd.critical) ev.push_back({c, true, false});
    for (const auto& v : cd.vertical) {
        bool merged = false;
        for (auto& e : ev) {
            AlgebraicNumber a = e.alpha, b = v;
            if (compare(a, b) == 0) {
                e.vertical = merged = true;
                break;
            }
        }
        if (!merged) ev.push_back({v, false, true});
    }
    std::sort(ev.begin(), ev.end(), [](Event& a, Event& b) { return compare(a.alpha, b.alpha) < 0; });
    std::vector<Dyadic> seps;
    if (ev.empty()) {
        seps.push_back(Dyadic());
    } else {
        seps.push_back((ev.front().alpha.lo() - Dyadic(1)).floor_at(0));
        for (size_t i = 0; i + 1 < ev.size(); ++i) {
            compare(ev[i].alpha, ev[i + 1].alpha);
            while (!(ev[i].alpha.hi() < ev[i + 1].alpha.lo())) {
                ev[i].alpha.qir_step();
                ev[i + 1].alpha.qir_step();
            }
            seps.push_back(simplest_between(ev[i].alpha.hi(), ev[i + 1].alpha.lo()));
        }
        seps.push_back((ev.back().alpha.hi() + Dyadic(1)).ceil_at(0));
    }
    BsContext ctx(cd, opt.lift.seed, opt.lift.prime_bits);
    LiftOptions lo = opt.lift;
    lo.policy = policy;
    out.fibers.push_back(lift_intermediate(cd, seps[0]));
    for (size_t i = 0; i < ev.size(); ++i) {
        FiberInfo fi;
        if (cd.ny == 0) {
            fi.alpha = ev[i].alpha;
        } else if (ev[i].critical) {
            fi = lift(ctx, ev[i].alpha, lo);
        } else {
            // a vertical line over a regular fiber: f(alpha, y) is square-free
            int d = fiber_degree(cd.f, ev[i].alpha);
            auto r = lift_nt(cd, ev[i].alpha, d, lo);
            fi = r ? *r : lift_bs(ctx, ev[i].alpha);
            fi.critical = false;
        }
        fi.vertical_line = ev[i].vertical;
        out.fibers.push_back(std::move(fi));
        out.fibers.push_back(lift_intermediate(cd, seps[i + 1]));
    }
    out.graph = connect(cd, out.fibers, seps);
    out.vertical_lines = cd.vertical;
    out.data = std::move(cd);
    return out;
}

}  // namespace detail

/// Full analysis. geotop mode works in the input coordinates; top-nt mode
/// shears x -> x + s y until the genericity certificate holds and lifts every
/// fiber numerically.
inline CurveAnalysis analyze(const BiPoly& f, const AnalyzeOptions& opt = {}) {
    if (opt.mode == AnalysisMode::GeoTop) {
        CurveData cd = prepare_curve(f, opt.lift.seed, opt.lift.prime_bits);
        return detail::analyze_prepared(std::move(cd), opt, opt.lift.policy);
    }
    std::mt19937_64 rng(opt.shear_seed);
    std::uniform_int_distribution<long> pick(1, 64);
    for (int attempt = 0; attempt < 6; ++attempt) {
        long s = pick(rng);
        BiPoly g = f.shear(Integer(s));
        CurveData cd = prepare_curve(g, opt.lift.seed, opt.lift.prime_bits);
        if (cd.content.degree() >= 1) continue;
        GenericityCertificate c = genericity_check(cd, opt.lift.seed, opt.lift.prime_bits);
        if (!c.generic) continue;
        CurveAnalysis a = detail::analyze_prepared(std::move(cd), opt, LiftPolicy::NT);
        a.input = f;
        a.analyzed = g;
        a.shear = s;
        return a;
    }
    throw LiftFailure("no generic shear found after 6 draws");
}

}  // namespace curvekit
