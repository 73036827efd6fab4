#pragma once

// Curve-pair analysis and arrangements. All curves share one sweep: the
// event lines are the critical values of every curve together with the real
// roots of every pairwise resultant, merged by exact comparison. Points of
// different curves on one line are refined until the number of overlapping
// pairs equals the number of intersections Bisolve reports on that line.

#include "geotop.hpp"

#include <memory>

namespace curvekit {

class VerticalLineError : public std::invalid_argument {
public:
    explicit VerticalLineError(const IntPoly& c)
        : std::invalid_argument("vertical line components are not supported here; factor " + c.to_string()) {}
};

/// One vertex candidate on a sweep line: points of one or more curves that
/// coincide.
struct LineEntry {
    std::vector<std::pair<size_t, size_t>> members;  // (curve, point index)
    Interval y;
    int multiplicity = 1;  // largest multiplicity among the members
};

struct SweepLine {
    AlgebraicNumber x;
    bool event = false;
    std::vector<bool> critical;    // per curve
    int m = 0;                     // intersection points counted by Bisolve
    bool covanishing = false;      // two leading coefficients vanish together
    std::vector<FiberInfo> fibers;  // per curve
    std::vector<LineEntry> entries;  // ascending in y
};

namespace detail {

/// Shrink the isolating interval of a point of f(alpha, y) to at most half
/// its width. Subintervals without roots are discarded by Descartes' rule.
inline void refine_point(const BiPoly& f, FiberInfo& fi, FiberPoint& p) {
    FiberBdc bdc(f, fi.alpha, fi.degree);
    const Dyadic lo0 = p.y.lo, hi0 = p.y.hi;
    const Dyadic target = p.y.width().half();
    auto clear = [&bdc](const Dyadic& t) { return !interval_eval_coeffs(bdc.coeffs(), Interval(t)).contains_zero(); };
    bool lo_ok = clear(lo0), hi_ok = clear(hi0);
    std::vector<std::pair<Dyadic, Dyadic>> live{{lo0, hi0}};
    if (p.y.is_point()) return;
    while (live.back().second - live.front().first > target) {
        std::vector<std::pair<Dyadic, Dyadic>> next;
        bool split = live.size() < 32;
        for (const auto& [a, b] : live) {
            std::vector<std::pair<Dyadic, Dyadic>> parts;
            if (split) {
                Dyadic c = bdc.split(a, b);
                parts = {{a, c}, {c, b}};
            } else {
                parts = {{a, b}};
            }
            for (const auto& [u, v] : parts) {
                std::optional<int> var = bdc.variations(u, v);
                bool ends = (u != lo0 || lo_ok) && (v != hi0 || hi_ok);
                if (var && *var == 0 && ends) continue;
                next.emplace_back(u, v);
            }
        }
        if (next.empty()) throw std::logic_error("fiber point lost during refinement");
        if (!split || next.size() == 2 * live.size()) {
            bdc.refine();
            if (!lo_ok) lo_ok = clear(lo0);
            if (!hi_ok) hi_ok = clear(hi0);
        }
        live = std::move(next);
    }
    p.y = Interval(live.front().first, live.back().second);
}

inline std::vector<AlgebraicNumber> merge_values(std::vector<AlgebraicNumber> xs) {
    std::vector<AlgebraicNumber> out;
    for (auto& x : xs) {
        bool dup = false;
        for (auto& o : out)
            if (compare(o, x) == 0) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(x);
    }
    std::sort(out.begin(), out.end(), [](AlgebraicNumber& a, AlgebraicNumber& b) { return compare(a, b) < 0; });
    for (size_t i = 0; i + 1 < out.size(); ++i)
        while (!(out[i].hi() < out[i + 1].lo())) {
            out[i].qir_step();
            out[i + 1].qir_step();
        }
    return out;
}

/// The common sweep over a family of pairwise coprime curves.
class Sweep {
public:
    Sweep(const std::vector<BiPoly>& curves, const LiftOptions& opt) {
        const size_t n = curves.size();
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (auto c = common_factor(curves[i], curves[j])) throw CommonFactorError(*c);
        for (const auto& c : curves) {
            if (c.deg_y() < 1) {
                if (c.deg_x() < 1) throw std::invalid_argument("constant polynomial");
                throw VerticalLineError(c.ycoeff(0));
            }
            cds_.push_back(std::make_unique<CurveData>(prepare_curve(c, opt.seed, opt.prime_bits)));
            if (cds_.back()->content.degree() >= 1) throw VerticalLineError(cds_.back()->content);
            ctx_.push_back(std::make_unique<BsContext>(*cds_.back(), opt.seed, opt.prime_bits));
        }
        std::vector<AlgebraicNumber> cand;
        for (const auto& cd : cds_)
            for (const auto& c : cd->critical) cand.push_back(c);
        meets_.assign(n, std::vector<std::vector<Solution>>(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) {
                SolveOptions so;
                so.seed = opt.seed;
                so.prime_bits = opt.prime_bits;
                SolveResult r = solve(cds_[i]->f, cds_[j]->f, so);
                meets_[i][j] = r.solutions;
                for (const auto& x : r.px.roots) cand.push_back(x);
            }
        std::vector<AlgebraicNumber> ev = merge_values(std::move(cand));
        if (ev.empty()) {
            seps_.push_back(Dyadic());
        } else {
            seps_.push_back((ev.front().lo() - Dyadic(1)).floor_at(0));
            for (size_t i = 0; i + 1 < ev.size(); ++i) seps_.push_back(simplest_between(ev[i].hi(), ev[i + 1].lo()));
            seps_.push_back((ev.back().hi() + Dyadic(1)).ceil_at(0));
        }
        lines_.push_back(separator_line(seps_[0]));
        for (size_t i = 0; i < ev.size(); ++i) {
            lines_.push_back(event_line(ev[i], opt));
            lines_.push_back(separator_line(seps_[i + 1]));
        }
        for (auto& l : lines_) resolve(l);
    }

    size_t size() const { return cds_.size(); }
    const CurveData& curve(size_t i) const { return *cds_[i]; }
    std::vector<SweepLine>& lines() { return lines_; }
    const std::vector<Dyadic>& separators() const { return seps_; }
    const std::vector<Solution>& meets(size_t i, size_t j) const { return meets_[std::min(i, j)][std::max(i, j)]; }

private:
    SweepLine separator_line(const Dyadic& q) {
        SweepLine l;
        l.x = AlgebraicNumber::from_dyadic(q);
        l.critical.assign(size(), false);
        for (const auto& cd : cds_) l.fibers.push_back(lift_intermediate(*cd, q));
        return l;
    }

    SweepLine event_line(const AlgebraicNumber& alpha, const LiftOptions& opt) {
        SweepLine l;
        l.x = alpha;
        l.event = true;
        for (size_t i = 0; i < size(); ++i) {
            const CurveData& cd = *cds_[i];
            bool crit = false;
            for (const auto& c : cd.critical) {
                AlgebraicNumber a = c, b = alpha;
                if (compare(a, b) == 0) crit = true;
            }
            l.critical.push_back(crit);
            FiberInfo fi;
            if (crit) {
                fi = lift(*ctx_[i], alpha, opt);
            } else {
                int d = fiber_degree(cd.f, alpha);
                auto r = lift_nt(cd, alpha, d, opt);
                fi = r ? *r : lift_bs(*ctx_[i], alpha);
                fi.critical = false;
            }
            l.fibers.push_back(std::move(fi));
        }
        for (size_t i = 0; i < size(); ++i)
            for (size_t j = i + 1; j < size(); ++j) {
                for (const auto& s : meets_[i][j]) {
                    AlgebraicNumber a = s.x, b = alpha;
                    if (compare(a, b) == 0) ++l.m;
                }
                const IntPoly& li = cds_[i]->f.lc_y();
                const IntPoly& lj = cds_[j]->f.lc_y();
                if (li.degree() >= 1 && lj.degree() >= 1 && is_root_of(li, alpha) && is_root_of(lj, alpha))
                    l.covanishing = true;
            }
        return l;
    }

    /// Refine until the overlapping pairs of every two curves are exactly
    /// their intersections on this line, then group coinciding points.
    void resolve(SweepLine& l) {
        const size_t n = size();
        auto expected = [&](size_t i, size_t j) {
            if (!l.event) return 0;
            int c = 0;
            for (const auto& s : meets_[i][j]) {
                AlgebraicNumber a = s.x;
                if (compare(a, l.x) == 0) ++c;
            }
            return c;
        };
        std::vector<std::vector<int>> want(n, std::vector<int>(n, 0));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) want[i][j] = expected(i, j);
        while (true) {
            bool done = true;
            std::vector<std::vector<bool>> dirty(n);
            for (size_t i = 0; i < n; ++i) dirty[i].assign(l.fibers[i].points.size(), false);
            for (size_t i = 0; i < n; ++i)
                for (size_t j = i + 1; j < n; ++j) {
                    int c = 0;
                    for (size_t a = 0; a < l.fibers[i].points.size(); ++a)
                        for (size_t b = 0; b < l.fibers[j].points.size(); ++b)
                            if (l.fibers[i].points[a].y.overlaps(l.fibers[j].points[b].y)) {
                                ++c;
                                dirty[i][a] = dirty[j][b] = true;
                            }
                    if (c < want[i][j]) throw std::logic_error("fewer overlapping points than intersections");
                    if (c != want[i][j]) done = false;
                }
            if (done) break;
            for (size_t i = 0; i < n; ++i)
                for (size_t a = 0; a < dirty[i].size(); ++a)
                    if (dirty[i][a]) refine_point(cds_[i]->f, l.fibers[i], l.fibers[i].points[a]);
        }
        // union of overlapping points
        std::vector<std::pair<size_t, size_t>> pts;
        for (size_t i = 0; i < n; ++i)
            for (size_t a = 0; a < l.fibers[i].points.size(); ++a) pts.emplace_back(i, a);
        std::vector<size_t> parent(pts.size());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&parent](size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        auto Y = [&](size_t k) -> const FiberPoint& { return l.fibers[pts[k].first].points[pts[k].second]; };
        for (size_t u = 0; u < pts.size(); ++u)
            for (size_t v = u + 1; v < pts.size(); ++v)
                if (pts[u].first != pts[v].first && Y(u).y.overlaps(Y(v).y)) parent[find(u)] = find(v);
        std::map<size_t, LineEntry> groups;
        for (size_t u = 0; u < pts.size(); ++u) {
            auto it = groups.find(find(u));
            if (it == groups.end()) {
                groups.emplace(find(u), LineEntry{{pts[u]}, Y(u).y, Y(u).multiplicity});
            } else {
                it->second.members.push_back(pts[u]);
                it->second.y = it->second.y.hull(Y(u).y);
                it->second.multiplicity = std::max(it->second.multiplicity, Y(u).multiplicity);
            }
        }
        l.entries.clear();
        for (auto& [k, e] : groups) l.entries.push_back(std::move(e));
        std::sort(l.entries.begin(), l.entries.end(), [](const LineEntry& a, const LineEntry& b) { return a.y.lo < b.y.lo; });
    }

    std::vector<std::unique_ptr<CurveData>> cds_;
    std::vector<std::unique_ptr<BsContext>> ctx_;
    std::vector<std::vector<std::vector<Solution>>> meets_;
    std::vector<Dyadic> seps_;
    std::vector<SweepLine> lines_;
};

}  // namespace detail

struct CurvePairAnalysis {
    BiPoly f, g;
    std::vector<SweepLine> lines;  // alternating separator / event lines
    std::vector<Solution> intersections;

    /// Event lines carrying at least one intersection.
    std::vector<const SweepLine*> intersection_events() const {
        std::vector<const SweepLine*> out;
        for (const auto& l : lines)
            if (l.event && l.m > 0) out.push_back(&l);
        return out;
    }
};

inline CurvePairAnalysis curve_pair_analyze(const BiPoly& f, const BiPoly& g, const LiftOptions& opt = {}) {
    detail::Sweep s({f, g}, opt);
    CurvePairAnalysis out;
    out.f = f;
    out.g = g;
    out.intersections = s.meets(0, 1);
    out.lines = std::move(s.lines());
    return out;
}

enum class ArrVertexKind { Point, Left, Right, Top, Bottom };

inline const char* to_string(ArrVertexKind k) {
    switch (k) {
        case ArrVertexKind::Point: return "point";
        case ArrVertexKind::Left: return "left";
        case ArrVertexKind::Right: return "right";
        case ArrVertexKind::Top: return "top";
        default: return "bottom";
    }
}

struct ArrVertex {
    ArrVertexKind kind = ArrVertexKind::Point;
    size_t line = 0;   // sweep line index; for ends at infinity the line the arc approaches
    size_t entry = 0;  // entry on that line (Point only)
    std::vector<size_t> curves;
};

struct ArrEdge {
    size_t u = 0, v = 0;
    size_t curve = 0;
};

struct Arrangement {
    std::vector<BiPoly> curves;
    std::vector<SweepLine> lines;
    std::vector<ArrVertex> vertices;  // finite points first, then ends at infinity
    std::vector<ArrEdge> edges;
    size_t V = 0;  // finite vertices
    size_t E = 0;
    size_t F = 0;  // faces, including the unbounded ones
    size_t components = 0;
    bool euler_ok = false;
};

namespace detail {

/// Full sweep graph: one node per line entry plus ends at infinity.
struct SweepGraph {
    struct Node {
        ArrVertexKind kind = ArrVertexKind::Point;
        size_t line = 0, rank = 0;  // rank: entry index, or order key for ends
        bool from_left = false;     // Top/Bottom: arc arrives from the left side
        std::vector<size_t> curves;
    };
    std::vector<Node> nodes;
    std::vector<std::array<size_t, 3>> edges;  // (node, node, curve)
};

}  // namespace detail

/// Vertices are critical and intersection points; edges are the maximal arc
/// pieces between them. Faces are traced on the planar embedding clipped to a
/// box that receives the unbounded arcs.
inline Arrangement arrangement_build(const std::vector<BiPoly>& curves, const LiftOptions& opt = {}) {
    if (curves.empty()) throw std::invalid_argument("no curves");
    detail::Sweep s(curves, opt);
    auto& L = s.lines();
    const auto& seps = s.separators();
    using Node = detail::SweepGraph::Node;
    detail::SweepGraph G;
    std::vector<std::vector<size_t>> nid(L.size());
    for (size_t k = 0; k < L.size(); ++k)
        for (size_t e = 0; e < L[k].entries.size(); ++e) {
            Node nd;
            nd.line = k;
            nd.rank = e;
            for (const auto& m : L[k].entries[e].members) nd.curves.push_back(m.first);
            nid[k].push_back(G.nodes.size());
            G.nodes.push_back(nd);
        }
    // point index of curve i on line k -> entry index
    auto entry_of = [&L](size_t k, size_t i, size_t p) {
        for (size_t e = 0; e < L[k].entries.size(); ++e)
            for (const auto& m : L[k].entries[e].members)
                if (m.first == i && m.second == p) return e;
        throw std::logic_error("point without entry");
    };
    auto add_end = [&G](ArrVertexKind kind, size_t line, size_t rank, bool from_left, size_t curve) {
        Node nd;
        nd.kind = kind;
        nd.line = line;
        nd.rank = rank;
        nd.from_left = from_left;
        nd.curves = {curve};
        G.nodes.push_back(nd);
        return G.nodes.size() - 1;
    };
    for (size_t i = 0; i < s.size(); ++i) {
        const CurveData& cd = s.curve(i);
        for (size_t k = 1; k + 1 < L.size(); k += 2) {
            for (bool right : {false, true}) {
                size_t sd = right ? k + 1 : k - 1;
                std::vector<int> tg =
                    detail::match_arcs(cd, L[k].fibers[i], L[sd].fibers[i], right, seps[k / 2], seps[k / 2 + 1]);
                for (size_t j = 0; j < tg.size(); ++j) {
                    size_t from = nid[sd][entry_of(sd, i, j)];
                    size_t to;
                    if (tg[j] >= 0) {
                        to = nid[k][entry_of(k, i, static_cast<size_t>(tg[j]))];
                    } else {
                        to = add_end(tg[j] == -2 ? ArrVertexKind::Top : ArrVertexKind::Bottom, k, G.nodes[from].rank,
                                     !right, i);
                    }
                    G.edges.push_back({from, to, i});
                }
            }
        }
        const size_t last = L.size() - 1;
        for (size_t j = 0; j < L[0].fibers[i].points.size(); ++j) {
            size_t from = nid[0][entry_of(0, i, j)];
            G.edges.push_back({add_end(ArrVertexKind::Left, 0, G.nodes[from].rank, false, i), from, i});
        }
        for (size_t j = 0; j < L[last].fibers[i].points.size(); ++j) {
            size_t from = nid[last][entry_of(last, i, j)];
            G.edges.push_back({from, add_end(ArrVertexKind::Right, last, G.nodes[from].rank, false, i), i});
        }
    }

    // which nodes survive as vertices
    const size_t N = G.nodes.size();
    std::vector<std::vector<size_t>> inc(N);
    for (size_t e = 0; e < G.edges.size(); ++e) {
        inc[G.edges[e][0]].push_back(e);
        inc[G.edges[e][1]].push_back(e);
    }
    std::vector<bool> kept(N, false);
    for (size_t v = 0; v < N; ++v) {
        const Node& nd = G.nodes[v];
        if (nd.kind != ArrVertexKind::Point) {
            kept[v] = true;
        } else if (L[nd.line].event) {
            const LineEntry& en = L[nd.line].entries[nd.rank];
            kept[v] = en.members.size() > 1 || en.multiplicity > 1 || inc[v].size() != 2;
        }
        if (!kept[v] && inc[v].size() != 2) throw std::logic_error("regular point with degree other than two");
    }

    Arrangement out;
    out.curves = curves;
    std::vector<size_t> vid(N, SIZE_MAX);
    auto emit = [&](size_t v) {
        vid[v] = out.vertices.size();
        ArrVertex av;
        av.kind = G.nodes[v].kind;
        av.line = G.nodes[v].line;
        av.entry = G.nodes[v].rank;
        av.curves = G.nodes[v].curves;
        out.vertices.push_back(av);
    };
    for (size_t v = 0; v < N; ++v)
        if (kept[v] && G.nodes[v].kind == ArrVertexKind::Point) emit(v);
    out.V = out.vertices.size();

    // ends at infinity in box order; each side lists its nodes in ccw order
    std::vector<size_t> left, right, top, bottom;
    for (size_t v = 0; v < N; ++v) switch (G.nodes[v].kind) {
            case ArrVertexKind::Left: left.push_back(v); break;
            case ArrVertexKind::Right: right.push_back(v); break;
            case ArrVertexKind::Top: top.push_back(v); break;
            case ArrVertexKind::Bottom: bottom.push_back(v); break;
            default: break;
        }
    // a higher arc reaching +inf from the left meets the top side further left
    auto top_less = [&G](size_t a, size_t b) {
        const Node &x = G.nodes[a], &y = G.nodes[b];
        if (x.line != y.line) return x.line < y.line;
        if (x.from_left != y.from_left) return x.from_left;
        return x.from_left ? x.rank > y.rank : x.rank < y.rank;
    };
    auto bottom_less = [&G](size_t a, size_t b) {
        const Node &x = G.nodes[a], &y = G.nodes[b];
        if (x.line != y.line) return x.line < y.line;
        if (x.from_left != y.from_left) return x.from_left;
        return x.from_left ? x.rank < y.rank : x.rank > y.rank;
    };
    auto by_rank = [&G](size_t a, size_t b) { return G.nodes[a].rank < G.nodes[b].rank; };
    std::sort(left.begin(), left.end(), by_rank);    // bottom to top
    std::sort(right.begin(), right.end(), by_rank);  // bottom to top
    std::sort(top.begin(), top.end(), top_less);     // left to right
    std::sort(bottom.begin(), bottom.end(), bottom_less);
    for (auto* side : {&left, &right, &top, &bottom})
        for (size_t v : *side) emit(v);

    // collapse chains of regular points into edges; remember the first step
    struct Chain {
        size_t a, b, curve, na, nb;  // endpoints and their neighbours along the chain
    };
    std::vector<Chain> chains;
    std::vector<bool> used(G.edges.size(), false);
    auto other = [&G](size_t e, size_t v) { return G.edges[e][0] == v ? G.edges[e][1] : G.edges[e][0]; };
    for (size_t v = 0; v < N; ++v) {
        if (!kept[v]) continue;
        for (size_t e0 : inc[v]) {
            if (used[e0]) continue;
            used[e0] = true;
            size_t prev = v, cur = other(e0, v), e = e0;
            while (!kept[cur]) {
                size_t nxt = inc[cur][0] == e ? inc[cur][1] : inc[cur][0];
                used[nxt] = true;
                prev = cur;
                cur = other(nxt, cur);
                e = nxt;
            }
            chains.push_back({v, cur, G.edges[e0][2], other(e0, v), prev});
        }
    }
    for (const auto& c : chains) out.edges.push_back({vid[c.a], vid[c.b], c.curve});
    out.E = out.edges.size();

    // darts: 2c from a, 2c+1 from b; box edges follow the chains
    struct Dart {
        size_t from;
        int cls;    // angular class
        long key;   // order inside the class
    };
    std::vector<Dart> darts;
    auto step_key = [&G](size_t v, size_t nb) -> std::pair<int, long> {
        const Node &x = G.nodes[v], &y = G.nodes[nb];
        long r = static_cast<long>(y.rank);
        switch (x.kind) {
            case ArrVertexKind::Point:
                // ccw from below: rightward steps bottom up, then leftward steps top down
                return y.line > x.line ? std::pair{0, r} : std::pair{1, -r};
            case ArrVertexKind::Left: return {1, 0};    // down, arc, up
            case ArrVertexKind::Right: return {1, 0};   // up, arc, down
            case ArrVertexKind::Top: return {2, 0};     // right, left, arc
            default: return {1, 0};                     // bottom: right, arc, left
        }
    };
    for (const auto& c : chains) {
        auto ka = step_key(c.a, c.na), kb = step_key(c.b, c.nb);
        darts.push_back({c.a, ka.first, ka.second});
        darts.push_back({c.b, kb.first, kb.second});
    }
    // box: corners BL, TL, TR, BR after the emitted vertices
    const size_t BL = N, TL = N + 1, TR = N + 2, BR = N + 3;
    size_t box_edges = 0;
    auto box_edge = [&](size_t a, int ca, size_t b, int cb) {
        darts.push_back({a, ca, 0});
        darts.push_back({b, cb, 0});
        ++box_edges;
    };
    // classes: left side nodes (down 0, up 2), right (up 0, down 2),
    // top (right 0, left 1), bottom (right 0, left 2); corners any
    {
        std::vector<size_t> l{BL};
        l.insert(l.end(), left.begin(), left.end());
        l.push_back(TL);
        for (size_t i = 0; i + 1 < l.size(); ++i) box_edge(l[i], 2, l[i + 1], 0);  // up from l[i], down into l[i+1]
        std::vector<size_t> t{TL};
        t.insert(t.end(), top.begin(), top.end());
        t.push_back(TR);
        for (size_t i = 0; i + 1 < t.size(); ++i) box_edge(t[i], 0, t[i + 1], 1);
        std::vector<size_t> r{TR};
        r.insert(r.end(), right.rbegin(), right.rend());
        r.push_back(BR);
        for (size_t i = 0; i + 1 < r.size(); ++i) box_edge(r[i], 2, r[i + 1], 0);
        std::vector<size_t> b{BR};
        b.insert(b.end(), bottom.rbegin(), bottom.rend());
        b.push_back(BL);
        for (size_t i = 0; i + 1 < b.size(); ++i) box_edge(b[i], 2, b[i + 1], 0);
    }
    // rotation systems
    const size_t NN = N + 4;
    std::vector<std::vector<size_t>> rot(NN);
    for (size_t d = 0; d < darts.size(); ++d) rot[darts[d].from].push_back(d);
    for (auto& r : rot)
        std::sort(r.begin(), r.end(), [&darts](size_t a, size_t b) {
            if (darts[a].cls != darts[b].cls) return darts[a].cls < darts[b].cls;
            return darts[a].key < darts[b].key;
        });
    std::vector<size_t> pos(darts.size());
    for (const auto& r : rot)
        for (size_t i = 0; i < r.size(); ++i) pos[r[i]] = i;
    std::vector<bool> seen(darts.size(), false);
    size_t cycles = 0;
    for (size_t d0 = 0; d0 < darts.size(); ++d0) {
        if (seen[d0]) continue;
        ++cycles;
        size_t d = d0;
        while (!seen[d]) {
            seen[d] = true;
            size_t t = d ^ 1;  // the same edge seen from its head
            const auto& r = rot[darts[t].from];
            d = r[(pos[t] + r.size() - 1) % r.size()];
        }
    }
    std::vector<size_t> parent(NN);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    size_t vcount = 0;
    for (size_t v = 0; v < NN; ++v)
        if (v >= N || kept[v]) {
            ++vcount;
            if (rot[v].empty()) ++cycles;  // an isolated point bounds its own face
        }
    size_t comps = vcount;
    for (size_t d = 0; d < darts.size(); d += 2) {
        size_t a = find(darts[d].from), b = find(darts[d + 1].from);
        if (a != b) {
            parent[a] = b;
            --comps;
        }
    }
    size_t ecount = chains.size() + box_edges;
    out.euler_ok = static_cast<long>(vcount) - static_cast<long>(ecount) + static_cast<long>(cycles) ==
                   2 * static_cast<long>(comps);
    // regions of the plane = cycles - comps + 1; one of them lies outside the box
    out.F = cycles - comps;
    // components of the arrangement itself
    std::vector<size_t> p2(out.vertices.size());
    std::iota(p2.begin(), p2.end(), 0);
    auto find2 = [&p2](size_t x) {
        while (p2[x] != x) x = p2[x] = p2[p2[x]];
        return x;
    };
    size_t c2 = out.vertices.size();
    for (const auto& e : out.edges) {
        size_t a = find2(e.u), b = find2(e.v);
        if (a != b) {
            p2[a] = b;
            --c2;
        }
    }
    out.components = c2;
    out.lines = std::move(L);
    return out;
}

}  // namespace curvekit
