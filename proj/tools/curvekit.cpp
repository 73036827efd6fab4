// curvekit: solve | analyze | arrange
//
// Exit codes: 0 success, 2 input error, 3 numeric lift failure (only with
// --lift=nt or --mode=top-nt), 1 anything else.

#include <curvekit/io.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace curvekit;

namespace {

struct Common {
    std::vector<std::string> polys;
    std::vector<std::string> files;
    std::uint64_t seed = 1;
    int prime_bits = 31;
    long precision = 53;
    long budget_bits = 2048;
    std::string lift = "auto";
    std::string format = "json";
    std::string output;
};

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::vector<BiPoly> read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return parse_poly_lines(in);
    } catch (const std::invalid_argument& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::vector<BiPoly> gather(const Common& c) {
    std::vector<BiPoly> out;
    for (const auto& s : c.polys) out.push_back(parse_poly(s));
    for (const auto& f : c.files)
        for (auto& p : read_file(f)) out.push_back(std::move(p));
    return out;
}

LiftPolicy lift_policy(const std::string& s) {
    if (s == "nt") return LiftPolicy::NT;
    if (s == "bs") return LiftPolicy::BS;
    return LiftPolicy::Auto;
}

LiftOptions lift_options(const Common& c) {
    LiftOptions o;
    o.policy = lift_policy(c.lift);
    o.budget_bits = c.budget_bits;
    o.precision = c.precision;
    o.seed = c.seed;
    o.prime_bits = c.prime_bits;
    return o;
}

FilterFlags parse_filters(const std::string& s) {
    if (s == "all") return {};
    if (s == "none") return FilterFlags::none();
    FilterFlags f = FilterFlags::none();
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        if (item == "bitstream") f.bitstream = true;
        else if (item == "combinatorial") f.combinatorial = true;
        else if (item == "bidirectional") f.bidirectional = true;
        else if (item == "numeric") f.numeric = true;
        else throw InputError("unknown filter '" + item + "'");
    }
    return f;
}

Region parse_region(const std::string& s) {
    std::vector<Dyadic> v;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) v.push_back(parse_dyadic(item));
    if (v.size() != 4) throw InputError("--region expects xlo,xhi,ylo,yhi");
    if (!(v[0] < v[1]) || !(v[2] < v[3])) throw InputError("--region bounds must satisfy lo < hi");
    return {v[0], v[1], v[2], v[3]};
}

Json common_echo(const Common& c, const std::vector<BiPoly>& inputs) {
    Json in = Json::array();
    for (const auto& p : inputs) in.push_back(p.to_string());
    return Json{{"inputs", in}, {"seed", std::to_string(c.seed)}, {"prime_bits", c.prime_bits}, {"format", c.format}};
}

void emit(const Common& c, const std::string& text) {
    if (c.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(c.output, std::ios::binary);
    if (!out) throw InputError("cannot write " + c.output);
    out << text;
}

void add_common(CLI::App* sub, Common& c, bool lifts) {
    sub->add_option("-f,--file", c.files, "file with one polynomial per line ('#' comments)");
    sub->add_option("--seed", c.seed, "random seed (CURVEKIT_SEED overrides)");
    sub->add_option("--prime-bits", c.prime_bits, "bit size of modular primes")->check(CLI::Range(8, 62));
    sub->add_option("--budget-bits", c.budget_bits, "precision budget of the numeric solvers")->check(CLI::PositiveNumber);
    sub->add_option("-o,--output", c.output, "write the document to a file");
    if (lifts) {
        sub->add_option("--lift", c.lift, "critical fiber lifting")->check(CLI::IsMember({"nt", "bs", "auto"}));
        sub->add_option("--precision", c.precision, "initial numeric precision in bits")->check(CLI::PositiveNumber);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact analysis of plane algebraic curves"};
    app.require_subcommand(1);
    Common c;

    auto* solve_cmd = app.add_subcommand("solve", "real solutions of f = g = 0");
    std::string region, width, filters = "all";
    solve_cmd->add_option("polys", c.polys, "polynomials f and g");
    solve_cmd->add_option("--region", region, "xlo,xhi,ylo,yhi (dyadic)");
    solve_cmd->add_option("--width", width, "target box width (dyadic), default 2^-32");
    solve_cmd->add_option("--filters", filters, "all, none, or a list of bitstream,combinatorial,bidirectional,numeric");
    solve_cmd->add_option("--format", c.format)->check(CLI::IsMember({"json"}));
    add_common(solve_cmd, c, false);

    auto* analyze_cmd = app.add_subcommand("analyze", "topology of f = 0");
    std::string mode = "geotop";
    std::uint64_t shear_seed = 1;
    analyze_cmd->add_option("polys", c.polys, "polynomial f");
    analyze_cmd->add_option("--format", c.format)->check(CLI::IsMember({"json", "dot", "svg"}));
    analyze_cmd->add_option("--mode", mode)->check(CLI::IsMember({"geotop", "top-nt"}));
    analyze_cmd->add_option("--shear-seed", shear_seed, "seed for shear draws in top-nt mode");
    add_common(analyze_cmd, c, true);

    auto* arrange_cmd = app.add_subcommand("arrange", "arrangement of several curves");
    arrange_cmd->add_option("files", c.files, "input files, one polynomial per line");
    arrange_cmd->add_option("-e,--expr", c.polys, "inline polynomial");
    arrange_cmd->add_option("--format", c.format)->check(CLI::IsMember({"json"}));
    add_common(arrange_cmd, c, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    // the numeric filter of solve has its own, smaller default budget
    if (solve_cmd->parsed() && solve_cmd->count("--budget-bits") == 0) c.budget_bits = 256;

    std::string cmd = app.get_subcommands().front()->get_name();
    if (const char* env = std::getenv("CURVEKIT_SEED")) {
        try {
            size_t used = 0;
            c.seed = std::stoull(env, &used);
            if (env[used] != '\0') throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            std::cerr << "curvekit: CURVEKIT_SEED is not an unsigned integer\n";
            std::cout << render(error_document(cmd, "input", "CURVEKIT_SEED is not an unsigned integer"));
            return 2;
        }
    }

    auto fail = [&](int code, const std::string& kind, const std::string& msg, std::optional<std::string> factor = {}) {
        std::cerr << "curvekit " << cmd << ": " << msg << "\n";
        std::cout << render(error_document(cmd, kind, msg, factor));
        return code;
    };

    try {
        std::vector<BiPoly> in = gather(c);
        Json echo = common_echo(c, in);
        if (cmd == "solve") {
            if (in.size() != 2) throw InputError("solve expects exactly two polynomials, got " + std::to_string(in.size()));
            SolveOptions o;
            o.seed = c.seed;
            o.prime_bits = c.prime_bits;
            o.numeric_budget = c.budget_bits;
            o.filters = parse_filters(filters);
            if (!region.empty()) o.region = parse_region(region);
            if (!width.empty()) {
                o.width = parse_dyadic(width);
                if (o.width.sign() <= 0) throw InputError("--width must be positive");
            }
            echo["filters"] = filters_json(o.filters);
            echo["width"] = to_json(o.width);
            echo["budget_bits"] = c.budget_bits;
            if (o.region)
                echo["region"] = Json::array({to_json(o.region->xlo), to_json(o.region->xhi), to_json(o.region->ylo),
                                              to_json(o.region->yhi)});
            Json d = document(cmd, echo);
            d["result"] = solve_json(solve(in[0], in[1], o));
            emit(c, render(d));
        } else if (cmd == "analyze") {
            if (in.size() != 1) throw InputError("analyze expects one polynomial, got " + std::to_string(in.size()));
            AnalyzeOptions o;
            o.mode = mode == "top-nt" ? AnalysisMode::TopNT : AnalysisMode::GeoTop;
            o.lift = lift_options(c);
            o.shear_seed = shear_seed;
            CurveAnalysis a = analyze(in[0], o);
            if (c.format == "dot") {
                emit(c, analyze_dot(a));
            } else if (c.format == "svg") {
                emit(c, analyze_svg(a));
            } else {
                echo["mode"] = mode;
                echo["lift"] = c.lift;
                echo["shear_seed"] = std::to_string(shear_seed);
                echo["budget_bits"] = c.budget_bits;
                echo["precision"] = c.precision;
                Json d = document(cmd, echo);
                d["result"] = analyze_json(a);
                emit(c, render(d));
            }
        } else {
            if (in.empty()) throw InputError("arrange needs at least one curve");
            echo["lift"] = c.lift;
            echo["budget_bits"] = c.budget_bits;
            echo["precision"] = c.precision;
            Json d = document(cmd, echo);
            d["result"] = arrange_json(arrangement_build(in, lift_options(c)));
            emit(c, render(d));
        }
    } catch (const CommonFactorError& e) {
        return fail(2, "common_factor", e.what(), e.factor.to_string());
    } catch (const NotSquareFreeError& e) {
        return fail(2, "not_square_free", e.what(), e.factor.to_string());
    } catch (const ParseError& e) {
        return fail(2, "syntax", e.what());
    } catch (const std::invalid_argument& e) {
        return fail(2, "input", e.what());
    } catch (const LiftFailure& e) {
        return fail(3, "lift_failure", e.what());
    } catch (const std::exception& e) {
        return fail(1, "internal", e.what());
    }
    return 0;
}
