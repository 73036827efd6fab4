#pragma once

// Text and document formats: the polynomial grammar, dyadic literals, JSON
// documents for the three commands, DOT and SVG renderings of a topology
// graph. JSON objects are std::map backed, so keys come out sorted.

#include "arrange.hpp"

#include <json.hpp>

#include <cctype>
#include <sstream>

namespace curvekit {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& msg, size_t pos)
        : std::invalid_argument(msg + " at column " + std::to_string(pos + 1)), position(pos) {}
    size_t position;
};

namespace detail {

// expr   := term (('+' | '-') term)*
// term   := unary ('*' unary)*
// unary  := ('+' | '-') unary | power
// power  := atom ('^' integer)?
// atom   := integer | 'x' | 'y' | '(' expr ')'
class PolyParser {
public:
    explicit PolyParser(const std::string& s) : s_(s) {}

    BiPoly run() {
        skip();
        if (pos_ == s_.size()) throw ParseError("empty polynomial", pos_);
        BiPoly r = expr();
        if (pos_ != s_.size()) unexpected();
        return r;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    [[noreturn]] void unexpected() const {
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    }
    static bool starts_atom(char c) {
        return std::isdigit(static_cast<unsigned char>(c)) || c == 'x' || c == 'y' || c == '(';
    }

    BiPoly expr() {
        BiPoly r = term();
        while (peek() == '+' || peek() == '-') {
            char op = peek();
            ++pos_;
            skip();
            BiPoly t = term();
            r = op == '+' ? r + t : r - t;
        }
        return r;
    }
    BiPoly term() {
        BiPoly r = unary();
        while (true) {
            if (peek() == '*') {
                ++pos_;
                skip();
                r = r * unary();
            } else if (starts_atom(peek())) {
                throw ParseError("implicit multiplication is not allowed", pos_);
            } else {
                return r;
            }
        }
    }
    BiPoly unary() {
        if (peek() == '-' || peek() == '+') {
            char op = peek();
            ++pos_;
            skip();
            BiPoly u = unary();
            return op == '-' ? BiPoly() - u : u;
        }
        return power();
    }
    BiPoly power() {
        BiPoly b = atom();
        if (peek() != '^') return b;
        ++pos_;
        skip();
        size_t at = pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("exponent must be a non-negative integer", pos_);
        Integer e = integer();
        if (e > 4096) throw ParseError("exponent too large", at);
        BiPoly r = BiPoly::constant(Integer(1));
        for (long k = e.get_si(); k > 0; --k) r = r * b;
        return r;
    }
    BiPoly atom() {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) return BiPoly::constant(integer());
        if (c == 'x' || c == 'y') {
            ++pos_;
            if (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
                throw ParseError("unknown identifier", pos_ - 1);
            skip();
            return c == 'x' ? BiPoly::var_x() : BiPoly::var_y();
        }
        if (c == '(') {
            size_t open = pos_;
            ++pos_;
            skip();
            BiPoly r = expr();
            if (peek() != ')') {
                if (pos_ >= s_.size()) throw ParseError("unbalanced parenthesis", open);
                unexpected();
            }
            ++pos_;
            skip();
            return r;
        }
        unexpected();
    }
    Integer integer() {
        size_t b = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (peek() == '.' || peek() == 'e' || peek() == 'E') throw ParseError("non-integer literal", b);
        Integer v(s_.substr(b, pos_ - b));
        skip();
        return v;
    }

    const std::string& s_;
    size_t pos_ = 0;
};

}  // namespace detail

inline BiPoly parse_poly(const std::string& s) { return detail::PolyParser(s).run(); }

/// Polynomials of a file: one per line, '#' starts a comment.
inline std::vector<BiPoly> parse_poly_lines(std::istream& in) {
    std::vector<BiPoly> out;
    std::string line;
    size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(parse_poly(line));
        } catch (const ParseError& e) {
            throw std::invalid_argument("line " + std::to_string(no) + ": " + e.what());
        }
    }
    return out;
}

/// Exact dyadic literal: integers, finite decimals and fractions whose
/// reduced denominator is a power of two, or m*2^e.
inline Dyadic parse_dyadic(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    auto fail = [&text]() -> Dyadic { throw std::invalid_argument("not a dyadic number: '" + text + "'"); };
    if (s.empty()) return fail();
    auto is_int = [](const std::string& t) {
        size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto to_int = [](std::string t) {
        if (!t.empty() && t[0] == '+') t.erase(0, 1);
        return Integer(t);
    };
    Integer num, den(1);
    long e2 = 0;
    if (auto p = s.find("2^"); p != std::string::npos) {
        // m*2^e or 2^e
        std::string m = s.substr(0, p), e = s.substr(p + 2);
        if (!m.empty()) {
            if (m.back() != '*') return fail();
            m.pop_back();
            if (!is_int(m)) return fail();
            num = to_int(m);
        } else {
            num = 1;
        }
        if (!is_int(e)) return fail();
        e2 = to_int(e).get_si();
    } else if (auto q = s.find('/'); q != std::string::npos) {
        std::string a = s.substr(0, q), b = s.substr(q + 1);
        if (!is_int(a) || !is_int(b)) return fail();
        num = to_int(a);
        den = to_int(b);
        if (den == 0) return fail();
    } else if (auto d = s.find('.'); d != std::string::npos) {
        std::string a = s.substr(0, d), b = s.substr(d + 1);
        bool neg = !a.empty() && a[0] == '-';
        if (a == "-" || a == "+" || a.empty()) a += "0";
        if (!is_int(a) || (!b.empty() && !is_int(b)) || (!b.empty() && (b[0] == '-' || b[0] == '+'))) return fail();
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, b.size());
        Integer frac = b.empty() ? Integer(0) : Integer(b);
        num = abs(to_int(a)) * scale + frac;
        if (neg) num = -num;
        den = scale;
    } else {
        if (!is_int(s)) return fail();
        num = to_int(s);
    }
    if (den < 0) {
        den = -den;
        num = -num;
    }
    Integer g = gcd(num, den);
    if (g != 0) {
        num /= g;
        den /= g;
    }
    long k = 0;
    while (den > 1 && mpz_even_p(den.get_mpz_t())) {
        den /= 2;
        ++k;
    }
    if (den != 1) return fail();
    return Dyadic(num, e2 - k);
}

// ---- JSON encoding --------------------------------------------------------

inline Json to_json(const Integer& v) { return v.get_str(); }

inline Json to_json(const Dyadic& d) { return Json{{"mantissa", d.mantissa().get_str()}, {"exp2", d.exponent()}}; }

inline Json to_json(const Interval& I) { return Json{{"lo", to_json(I.lo)}, {"hi", to_json(I.hi)}}; }

inline Dyadic dyadic_from_json(const Json& j) {
    return Dyadic(Integer(j.at("mantissa").get<std::string>()), j.at("exp2").get<long>());
}

inline Interval interval_from_json(const Json& j) {
    return Interval(dyadic_from_json(j.at("lo")), dyadic_from_json(j.at("hi")));
}

inline Json to_json(const IntPoly& p) {
    Json c = Json::array();
    for (const auto& v : p.coeffs()) c.push_back(v.get_str());
    return c;
}

inline Json to_json(const AlgebraicNumber& a) {
    return Json{{"interval", to_json(a.interval())},
                {"poly", a.poly().to_string()},
                {"multiplicity", a.multiplicity()},
                {"approx", a.interval().mid().to_double()}};
}

inline Json document(const std::string& command, const Json& echo) {
    return Json{{"schema_version", kSchemaVersion}, {"command", Json{{"name", command}, {"args", echo}}}};
}

inline std::string render(const Json& j) { return j.dump(2) + "\n"; }

inline Json error_document(const std::string& command, const std::string& kind, const std::string& message,
                           const std::optional<std::string>& factor = std::nullopt) {
    Json e{{"kind", kind}, {"message", message}};
    if (factor) e["factor"] = *factor;
    Json d{{"schema_version", kSchemaVersion}, {"error", e}};
    if (!command.empty()) d["command"] = Json{{"name", command}};
    return d;
}

inline Json filters_json(const FilterFlags& f) {
    return Json{{"bitstream", f.bitstream}, {"combinatorial", f.combinatorial}, {"bidirectional", f.bidirectional},
                {"numeric", f.numeric}};
}

inline Json solve_json(const SolveResult& r) {
    Json sols = Json::array();
    for (const auto& s : r.solutions)
        sols.push_back(Json{{"x", to_json(s.x)}, {"y", to_json(s.y)}, {"certified_by", s.certified_by}});
    Json st{{"candidates", r.stats.candidates}, {"rounds", r.stats.rounds}, {"excluded", r.stats.excluded},
            {"certified", r.stats.certified}};
    return Json{{"solutions", sols}, {"count", r.solutions.size()}, {"stats", st}};
}

inline Json fiber_json(const FiberInfo& f, bool event) {
    Json pts = Json::array();
    for (const auto& p : f.points) pts.push_back(Json{{"y", to_json(p.y)}, {"multiplicity", p.multiplicity}});
    Json j{{"x", to_json(f.alpha)},        {"event", event},       {"critical", f.critical},
           {"vertical_line", f.vertical_line}, {"degree", f.degree}, {"method", to_string(f.method)},
           {"points", pts}};
    if (f.n_plus >= 0) j["n_plus"] = f.n_plus;
    return j;
}

inline Json analyze_json(const CurveAnalysis& a) {
    Json fibers = Json::array();
    for (size_t k = 0; k < a.fibers.size(); ++k) fibers.push_back(fiber_json(a.fibers[k], k % 2 == 1));
    Json vs = Json::array(), es = Json::array();
    for (size_t v = 0; v < a.graph.vertices.size(); ++v) {
        const Vertex& x = a.graph.vertices[v];
        vs.push_back(Json{{"id", v}, {"fiber", x.fiber}, {"point", x.point}, {"kind", to_string(x.kind)},
                          {"degree", a.graph.degree(v)}});
    }
    for (const auto& e : a.graph.edges) es.push_back(Json::array({e.first, e.second}));
    const GenericityCertificate& c = a.certificate;
    Json j{{"analyzed", a.analyzed.to_string()},
           {"certificate", Json{{"N_minus", c.N_minus}, {"N_plus", c.N_plus}, {"prime", std::to_string(c.prime)},
                                {"generic", c.generic}, {"gated", c.gated}}},
           {"fibers", fibers},
           {"graph", Json{{"vertices", vs}, {"edges", es}, {"components", a.graph.components()},
                          {"cycle_rank", a.graph.cycle_rank()}}}};
    j["shear"] = a.shear ? Json(*a.shear) : Json(nullptr);
    return j;
}

inline Json arrange_json(const Arrangement& a) {
    Json lines = Json::array();
    for (const auto& l : a.lines) {
        Json entries = Json::array();
        for (const auto& e : l.entries) {
            Json mem = Json::array();
            for (const auto& m : e.members) mem.push_back(Json::array({m.first, m.second}));
            entries.push_back(Json{{"y", to_json(e.y)}, {"members", mem}, {"multiplicity", e.multiplicity}});
        }
        lines.push_back(Json{{"x", to_json(l.x)}, {"event", l.event}, {"critical", l.critical}, {"m", l.m},
                             {"covanishing", l.covanishing}, {"entries", entries}});
    }
    Json vs = Json::array(), es = Json::array(), cs = Json::array();
    for (size_t v = 0; v < a.vertices.size(); ++v) {
        const ArrVertex& x = a.vertices[v];
        Json jv{{"id", v}, {"kind", to_string(x.kind)}, {"line", x.line}, {"curves", x.curves}};
        if (x.kind == ArrVertexKind::Point) jv["entry"] = x.entry;
        vs.push_back(jv);
    }
    for (const auto& e : a.edges) es.push_back(Json{{"u", e.u}, {"v", e.v}, {"curve", e.curve}});
    for (const auto& c : a.curves) cs.push_back(c.to_string());
    return Json{{"curves", cs},
                {"lines", lines},
                {"vertices", vs},
                {"edges", es},
                {"counts", Json{{"V", a.V}, {"E", a.E}, {"F", a.F}, {"components", a.components}, {"euler_ok", a.euler_ok}}}};
}

// ---- graph renderings -----------------------------------------------------

namespace detail {

struct Embedding {
    std::vector<double> x, y;
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
};

/// Straight-line embedding: fiber x and the midpoint of each point interval;
/// ends at infinity are placed one unit beyond the finite points.
inline Embedding embed(const CurveAnalysis& a) {
    Embedding e;
    const auto& G = a.graph;
    e.x.resize(G.vertices.size());
    e.y.resize(G.vertices.size());
    bool first = true;
    for (size_t v = 0; v < G.vertices.size(); ++v) {
        const Vertex& x = G.vertices[v];
        e.x[v] = a.fibers[x.fiber].alpha.interval().mid().to_double();
        if (first) {
            e.xmin = e.xmax = e.x[v];
        }
        e.xmin = std::min(e.xmin, e.x[v]);
        e.xmax = std::max(e.xmax, e.x[v]);
        if (x.point >= 0) {
            e.y[v] = a.fibers[x.fiber].points[static_cast<size_t>(x.point)].y.mid().to_double();
            if (first) e.ymin = e.ymax = e.y[v];
            e.ymin = std::min(e.ymin, e.y[v]);
            e.ymax = std::max(e.ymax, e.y[v]);
        }
        first = false;
    }
    for (size_t v = 0; v < G.vertices.size(); ++v) {
        if (G.vertices[v].kind == VertexKind::PlusInfinity) e.y[v] = e.ymax + 1;
        if (G.vertices[v].kind == VertexKind::MinusInfinity) e.y[v] = e.ymin - 1;
    }
    e.ymin -= 1;
    e.ymax += 1;
    return e;
}

inline std::string fmt(double v) {
    std::ostringstream o;
    o.precision(6);
    o << std::fixed << v;
    return o.str();
}

}  // namespace detail

inline std::string analyze_dot(const CurveAnalysis& a) {
    std::ostringstream o;
    detail::Embedding e = detail::embed(a);
    o << "graph topology {\n";
    for (size_t v = 0; v < a.graph.vertices.size(); ++v) {
        const Vertex& x = a.graph.vertices[v];
        o << "  n" << v << " [kind=\"" << to_string(x.kind) << "\", fiber=" << x.fiber << ", pos=\""
          << detail::fmt(e.x[v]) << "," << detail::fmt(e.y[v]) << "\"];\n";
    }
    for (const auto& ed : a.graph.edges) o << "  n" << ed.first << " -- n" << ed.second << ";\n";
    o << "}\n";
    return o.str();
}

inline std::string analyze_svg(const CurveAnalysis& a) {
    detail::Embedding e = detail::embed(a);
    const double W = 640, H = 480, pad = 20;
    double sx = (W - 2 * pad) / std::max(e.xmax - e.xmin, 1e-9);
    double sy = (H - 2 * pad) / std::max(e.ymax - e.ymin, 1e-9);
    auto X = [&](double x) { return detail::fmt(pad + (x - e.xmin) * sx); };
    auto Y = [&](double y) { return detail::fmt(H - pad - (y - e.ymin) * sy); };
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
      << " " << H << "\">\n";
    o << "<g class=\"edges\" stroke=\"black\" stroke-width=\"1.5\">\n";
    for (const auto& ed : a.graph.edges)
        o << "<line x1=\"" << X(e.x[ed.first]) << "\" y1=\"" << Y(e.y[ed.first]) << "\" x2=\"" << X(e.x[ed.second])
          << "\" y2=\"" << Y(e.y[ed.second]) << "\"/>\n";
    o << "</g>\n<g class=\"vertices\">\n";
    for (size_t v = 0; v < a.graph.vertices.size(); ++v) {
        const Vertex& x = a.graph.vertices[v];
        bool crit = x.kind == VertexKind::Critical;
        o << "<circle cx=\"" << X(e.x[v]) << "\" cy=\"" << Y(e.y[v]) << "\" r=\"" << (crit ? 4 : 2) << "\" class=\""
          << to_string(x.kind) << "\" data-degree=\"" << a.graph.degree(v) << "\" fill=\"" << (crit ? "red" : "black")
          << "\"/>\n";
    }
    o << "</g>\n</svg>\n";
    return o.str();
}

}  // namespace curvekit
