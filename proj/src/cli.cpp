#include "twoproj/cli.hpp"

#include "twoproj/error.hpp"
#include "twoproj/problem_io.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <ostream>
#include <sstream>

namespace twoproj {

namespace {

struct Globals {
    double tol = 1e-10;
    SearchOptions search;
    bool json = false;
};

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NoConvergence:
    case ErrorKind::SingularMatrix:
    case ErrorKind::PairingFailure:
    case ErrorKind::AfriatViolation:
    case ErrorKind::RadicandNegative:
        return kExitNumerical;
    case ErrorKind::IndeterminateMeasure:
        return kExitIndeterminate;
    default:
        return kExitInvalid;
    }
}

std::string join_reals(const std::vector<double>& values) {
    std::string out = "[";
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k) out += ", ";
        out += format_real(values[k]);
    }
    return out + "]";
}

// Text reports are "key: value" lines in insertion order.
class Report {
public:
    explicit Report(const char* command) { json_["command"] = command; }

    void line(const std::string& key, const std::string& text) { lines_.emplace_back(key, text); }
    void line(const std::string& key, double v) { line(key, format_real(v)); }
    void line(const std::string& key, bool v) { line(key, std::string(v ? "true" : "false")); }
    json& data() { return json_; }

    void emit(std::ostream& out, bool as_json) const {
        if (as_json) {
            out << json_.dump(2) << '\n';
            return;
        }
        for (const auto& [k, v] : lines_) out << k << ": " << v << '\n';
    }

private:
    json json_ = json::object();
    std::vector<std::pair<std::string, std::string>> lines_;
};

void verdict_lines(Report& r, const AttainmentVerdict& v) {
    r.line("attained", v.attained);
    r.line("lambda_max", v.lambda_max);
    r.line("norm", v.norm);
    r.line("Sigma", describe_sigma(v.sigma));
    r.line("clause", std::string(to_string(v.clause)));
    r.data()["verdict"] = to_json(v);
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_real(const std::string& text, const std::string& what) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v))
        throw Error(ErrorKind::ValidationError, what + ": expected a number, got '" + text + "'");
    return v;
}

long long parse_integer(const std::string& text, const std::string& what) {
    long long v = 0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end)
        throw Error(ErrorKind::ValidationError, what + ": expected an integer, got '" + text + "'");
    return v;
}

Example3Variant parse_variant(const std::string& text) {
    if (text == "one_over_n" || text == "1/n") return Example3Variant::one_over_n;
    if (text == "two_over_n" || text == "2/n") return Example3Variant::two_over_n;
    throw Error(ErrorKind::ValidationError, "variant: expected one_over_n or two_over_n, got '" + text + "'");
}

// "variant[,n]"
std::pair<Example3Variant, std::size_t> parse_ex3(const std::string& spec) {
    const auto parts = split(spec, ',');
    if (parts.size() > 2) throw Error(ErrorKind::ValidationError, "ex3: expected variant[,n]");
    std::size_t n = 64;
    if (parts.size() == 2) {
        const long long v = parse_integer(parts[1], "ex3 atom count");
        if (v < 1) throw Error(ErrorKind::ValidationError, "ex3 atom count must be at least 1");
        n = static_cast<std::size_t>(v);
    }
    return {parse_variant(parts[0]), n};
}

// --- subcommands ------------------------------------------------------------

int cmd_decompose(const std::string& path, const Globals& g, std::ostream& out) {
    const ProblemFile problem = load_problem(path);
    if (problem.kind != ProblemKind::projection_pair)
        throw Error(ErrorKind::ValidationError, "kind: decompose needs a projection_pair problem");
    const HalmosDecomposition d = decompose(*problem.p, *problem.q, {g.tol});
    const auto [p2, q2] = reconstruct(d);
    const double residual = std::max(max_abs_diff(*problem.p, p2), max_abs_diff(*problem.q, q2));

    Report r("decompose");
    r.line("dimension", std::to_string(d.dimension));
    for (Corner c : kCorners) r.line(std::string("dim_M") + to_string(c), std::to_string(d.subspace(c).cols()));
    r.line("generic_dimension", std::to_string(d.generic_dimension()));
    r.line("h_values", join_reals(d.h_values));
    r.line("roundtrip_residual", residual);
    r.data()["decomposition"] = to_json(d);
    r.data()["roundtrip_residual"] = residual;
    r.emit(out, g.json);
    return kExitOk;
}

int cmd_analyze(const std::string& path, const Globals& g, std::ostream& out) {
    const ProblemFile problem = load_problem(path);
    Report r("analyze");
    r.data()["kind"] = to_string(problem.kind);
    switch (problem.kind) {
    case ProblemKind::element:
        verdict_lines(r, decide_attainment(*problem.element, g.search));
        break;
    case ProblemKind::model_family: {
        const Example3 ex = example3_model(problem.variant, problem.n_atoms);
        r.data()["variant"] = to_string(problem.variant);
        r.data()["operator"] = to_string(problem.op);
        verdict_lines(r, decide_attainment(problem.op == TruncatedOperator::a ? ex.element : ex.t_symbol, g.search));
        break;
    }
    case ProblemKind::projection_pair: {
        if (!problem.a)
            throw Error(ErrorKind::ValidationError, "A: analyze needs an operator A alongside P and Q");
        const HalmosDecomposition d = decompose(*problem.p, *problem.q, {g.tol});
        const WStarElement element = extract_symbol(d, *problem.a);
        const double svd = largest_singular_value(*problem.a);
        verdict_lines(r, decide_attainment(element, g.search));
        r.line("svd_norm", svd);
        r.data()["svd_norm"] = svd;
        break;
    }
    case ProblemKind::skew: {
        const SkewAnalysis s = analyze_skew(*problem.t, {g.tol});
        verdict_lines(r, attains_norm(s, g.search));
        r.line("svd_norm", s.t_norm);
        r.data()["skew"] = to_json(s);
        break;
    }
    }
    r.emit(out, g.json);
    return kExitOk;
}

struct SkewArgs {
    std::string file;
    std::string family;
};

int cmd_skew(const SkewArgs& args, const Globals& g, std::ostream& out) {
    Report r("skew");
    std::optional<WStarElement> t_symbol;
    std::string family = args.family;

    if (!args.file.empty()) {
        const ProblemFile problem = load_problem(args.file);
        switch (problem.kind) {
        case ProblemKind::skew: {
            const SkewAnalysis s = analyze_skew(*problem.t, {g.tol});
            r.line("svd_norm", s.t_norm);
            r.line("pq_norm", s.pq_norm);
            r.line("afriat_residual", s.afriat_residual);
            r.line("h_eigenvalues", join_reals(s.h_eigenvalues));
            r.line("min_spectrum_is_atom", s.h_model.min_is_atom());
            r.data()["skew"] = to_json(s);
            t_symbol = s.t_symbol;
            break;
        }
        case ProblemKind::model_family: {
            const Example3 ex = example3_model(problem.variant, problem.n_atoms);
            r.data()["variant"] = to_string(problem.variant);
            t_symbol = ex.t_symbol;
            break;
        }
        case ProblemKind::element:
            t_symbol = skew_symbol(problem.element->model());
            break;
        case ProblemKind::projection_pair:
            throw Error(ErrorKind::ValidationError, "kind: skew needs a skew, model_family or element problem");
        }
    }

    if (family.rfind("ex3:", 0) == 0) {
        if (t_symbol) throw Error(ErrorKind::ValidationError, "--family ex3 supplies its own operator; drop the file");
        const auto [variant, n] = parse_ex3(family.substr(4));
        t_symbol = example3_model(variant, n).t_symbol;
        r.data()["variant"] = to_string(variant);
        family.clear();
    }
    if (!t_symbol) throw Error(ErrorKind::ValidationError, "skew needs a problem file or --family ex3:variant,n");

    const AttainmentVerdict base = attains_norm(t_symbol->model(), g.search);
    r.line("min_spectrum", t_symbol->model().min_point());
    r.data()["min_spectrum"] = t_symbol->model().min_point();

    if (family.empty()) {
        verdict_lines(r, decide_attainment(*t_symbol, g.search));
        r.data()["min_spectrum_atom_verdict"] = base.attained;
    } else if (family.rfind("lin:", 0) == 0) {
        const auto parts = split(family.substr(4), ',');
        if (parts.size() != 2) throw Error(ErrorKind::ValidationError, "--family lin: expected lin:alpha,beta");
        const double alpha = parse_real(parts[0], "alpha");
        const double beta = parse_real(parts[1], "beta");
        r.data()["family"] = {{"name", "linear"}, {"alpha", alpha}, {"beta", beta}};
        verdict_lines(r, decide_attainment(linear_family(*t_symbol, alpha, beta), g.search));
        r.line("T_attained", base.attained);
        r.data()["t_attained"] = base.attained;
    } else if (family.rfind("alt:", 0) == 0) {
        const long long m = parse_integer(family.substr(4), "m");
        if (m < 1 || m > 64) throw Error(ErrorKind::ValidationError, "--family alt: m must lie in [1, 64]");
        r.data()["family"] = {{"name", "alternating"}, {"m", m}};
        verdict_lines(r, decide_attainment(alternating_power(*t_symbol, static_cast<int>(m)), g.search));
        r.line("T_attained", base.attained);
        r.data()["t_attained"] = base.attained;
    } else {
        throw Error(ErrorKind::ValidationError, "--family: expected lin:a,b, alt:m or ex3:variant,n");
    }
    r.emit(out, g.json);
    return kExitOk;
}

struct VerifyArgs {
    bool random = false;
    std::size_t n = 8;
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    double residual_tol = 1e-9;
};

int cmd_verify(const VerifyArgs& args, const Globals& g, std::ostream& out) {
    if (!args.random) throw Error(ErrorKind::ValidationError, "verify: only --random is supported");
    if (args.n < 2) throw Error(ErrorKind::ValidationError, "--n must be at least 2");
    const TrialReport report = random_crosscheck(args.n, args.trials, args.seed, args.residual_tol);
    Report r("verify");
    r.line("n", std::to_string(report.dimension));
    r.line("trials", std::to_string(report.trials));
    r.line("seed", std::to_string(report.seed));
    r.line("max_residual", report.max_residual);
    r.line("max_roundtrip_residual", report.max_roundtrip_residual);
    r.line("failures", std::to_string(report.failures.size()));
    r.line("passed", report.passed());
    r.data()["report"] = to_json(report);
    r.emit(out, g.json);
    return report.passed() ? kExitOk : kExitNumerical;
}

int cmd_truncate(const std::string& path, const std::vector<std::size_t>& dims, const Globals& g,
                 std::ostream& out) {
    const ProblemFile problem = load_problem(path);
    if (problem.kind != ProblemKind::model_family)
        throw Error(ErrorKind::ValidationError, "kind: truncate needs a model_family problem");
    const std::vector<double> norms = truncation_norms(problem.variant, problem.op, dims);
    const Example3 ex = example3_model(problem.variant, problem.n_atoms);
    const double limit = norm(problem.op == TruncatedOperator::a ? ex.element : ex.t_symbol, g.search);
    bool increasing = true;
    for (std::size_t k = 1; k < norms.size(); ++k) increasing = increasing && norms[k] > norms[k - 1];

    Report r("truncate");
    r.line("operator", std::string(to_string(problem.op)));
    r.line("variant", std::string(to_string(problem.variant)));
    std::vector<double> dd(dims.begin(), dims.end());
    r.line("dims", join_reals(dd));
    r.line("norms", join_reals(norms));
    r.line("strictly_increasing", increasing);
    r.line("operator_norm", limit);
    r.data()["operator"] = to_string(problem.op);
    r.data()["variant"] = to_string(problem.variant);
    r.data()["dims"] = dims;
    r.data()["norms"] = norms;
    r.data()["strictly_increasing"] = increasing;
    r.data()["operator_norm"] = limit;
    r.emit(out, g.json);
    return kExitOk;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Norm attainment in the algebra generated by two projections", "twoproj"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--tol", g.tol, "Numerical tolerance for projections and decompositions")
        ->check(CLI::PositiveNumber);
    app.add_option("--grid", g.search.grid, "Initial samples per spectral interval")->check(CLI::Range(2, 1 << 24));
    app.add_option("--refine", g.search.refine, "Refinement rounds around each local maximum");
    app.add_flag("--json", g.json, "Emit a JSON report");

    std::string file;
    auto* decompose_cmd = app.add_subcommand("decompose", "Canonical decomposition of a projection pair");
    decompose_cmd->add_option("file", file, "Problem file")->required();

    auto* analyze_cmd = app.add_subcommand("analyze", "Norm and norm-attainment verdict");
    analyze_cmd->add_option("file", file, "Problem file")->required();

    SkewArgs skew_args;
    auto* skew_cmd = app.add_subcommand("skew", "Skew projection analysis and its derived families");
    skew_cmd->add_option("file", skew_args.file, "Problem file");
    skew_cmd->add_option("--family", skew_args.family, "lin:alpha,beta | alt:m | ex3:variant,n");

    VerifyArgs verify_args;
    auto* verify_cmd = app.add_subcommand("verify", "Randomized cross-check of the norm formula");
    verify_cmd->add_flag("--random", verify_args.random, "Random projection pairs and elements");
    verify_cmd->add_option("--n", verify_args.n, "Dimension");
    verify_cmd->add_option("--trials", verify_args.trials, "Number of trials");
    verify_cmd->add_option("--seed", verify_args.seed, "Base seed; trial k uses seed + k");
    verify_cmd->add_option("--residual-tol", verify_args.residual_tol, "Allowed relative norm residual");

    std::vector<std::size_t> dims{4, 16, 64, 256};
    auto* truncate_cmd = app.add_subcommand("truncate", "Norms of leading finite truncations");
    truncate_cmd->add_option("file", file, "Problem file (model_family)")->required();
    truncate_cmd->add_option("--dims", dims, "Truncation sizes, ascending")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (*decompose_cmd) return cmd_decompose(file, g, out);
        if (*analyze_cmd) return cmd_analyze(file, g, out);
        if (*skew_cmd) return cmd_skew(skew_args, g, out);
        if (*verify_cmd) return cmd_verify(verify_args, g, out);
        if (*truncate_cmd) return cmd_truncate(file, dims, g, out);
    } catch (const Error& e) {
        err << "error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitInvalid;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("twoproj");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace twoproj
