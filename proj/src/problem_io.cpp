#include "twoproj/problem_io.hpp"

#include "twoproj/error.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace twoproj {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotProjection: return "NotProjection";
    case ErrorKind::NotIdempotent: return "NotIdempotent";
    case ErrorKind::NotSkew: return "NotSkew";
    case ErrorKind::NotInAlgebra: return "NotInAlgebra";
    case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::ModelMismatch: return "ModelMismatch";
    case ErrorKind::EmptyModel: return "EmptyModel";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::EvalError: return "EvalError";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::PairingFailure: return "PairingFailure";
    case ErrorKind::AfriatViolation: return "AfriatViolation";
    case ErrorKind::RadicandNegative: return "RadicandNegative";
    case ErrorKind::IndeterminateMeasure: return "IndeterminateMeasure";
    }
    return "?";
}

const char* to_string(ProblemKind k) noexcept {
    switch (k) {
    case ProblemKind::projection_pair: return "projection_pair";
    case ProblemKind::skew: return "skew";
    case ProblemKind::element: return "element";
    case ProblemKind::model_family: return "model_family";
    }
    return "?";
}

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& message) {
    throw Error(ErrorKind::ValidationError, path + ": " + message);
}

const json& require(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) invalid(path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) invalid(path, std::string("missing field '") + key + "'");
    return *it;
}

double number_from_json(const json& j, const std::string& path) {
    if (!j.is_number()) invalid(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) invalid(path, "expected a finite number");
    return v;
}

std::size_t count_from_json(const json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0) invalid(path, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

std::string string_from_json(const json& j, const std::string& path) {
    if (!j.is_string()) invalid(path, "expected a string");
    return j.get<std::string>();
}

std::string field(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t k) { return path + "[" + std::to_string(k) + "]"; }

Expr expression_from_json(const json& j, const std::string& path) {
    if (j.is_number()) return Expr::constant(number_from_json(j, path));
    const std::string text = string_from_json(j, path);
    try {
        return parse_expression(text);
    } catch (const SyntaxError& e) {
        throw SyntaxError(e.offset(), e.expected(), path + ": " + e.what());
    }
}

Scalars scalars_from_json(const json& j, const std::string& path) {
    Scalars s;
    if (!j.is_object()) invalid(path, "expected an object keyed by \"00\", \"01\", \"10\", \"11\"");
    for (const auto& [key, value] : j.items()) {
        bool matched = false;
        for (Corner c : kCorners)
            if (key == to_string(c)) {
                at(s, c) = complex_from_json(value, field(path, key));
                matched = true;
            }
        if (!matched) invalid(field(path, key), "unknown subspace; expected 00, 01, 10 or 11");
    }
    return s;
}

Symbol symbol_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) invalid(path, "expected a 2x2 array of expressions");
    Symbol sym;
    for (std::size_t i = 0; i < 2; ++i) {
        const json& row = j[i];
        if (!row.is_array() || row.size() != 2) invalid(index(path, i), "expected two expressions");
        for (std::size_t k = 0; k < 2; ++k) sym[i][k] = expression_from_json(row[k], index(index(path, i), k));
    }
    return sym;
}

WStarElement element_from_json(const json& doc) {
    Scalars scalars;
    if (doc.contains("scalars")) scalars = scalars_from_json(doc["scalars"], "scalars");
    SpectralModel model;
    if (doc.contains("model")) model = model_from_json(doc["model"], "model");
    Symbol symbol;
    if (doc.contains("symbol"))
        symbol = symbol_from_json(doc["symbol"], "symbol");
    else if (!model.empty())
        invalid("symbol", "required when the model is nonempty");
    return build_element(std::move(scalars), std::move(symbol), std::move(model));
}

} // namespace

Complex complex_from_json(const json& j, const std::string& path) {
    if (j.is_number()) return number_from_json(j, path);
    if (!j.is_array() || j.size() != 2) invalid(path, "expected a complex number [re, im]");
    return {number_from_json(j[0], index(path, 0)), number_from_json(j[1], index(path, 1))};
}

ComplexMatrix matrix_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) invalid(path, "expected a nonempty array of rows");
    const std::size_t rows = j.size();
    std::size_t cols = 0;
    std::vector<Complex> entries;
    for (std::size_t r = 0; r < rows; ++r) {
        const json& row = j[r];
        if (!row.is_array() || row.empty()) invalid(index(path, r), "expected a nonempty row");
        if (r == 0) cols = row.size();
        if (row.size() != cols) invalid(index(path, r), "rows must have equal length");
        for (std::size_t c = 0; c < cols; ++c)
            entries.push_back(complex_from_json(row[c], index(index(path, r), c)));
    }
    return ComplexMatrix(rows, cols, std::move(entries));
}

SpectralModel model_from_json(const json& j, const std::string& path) {
    if (!j.is_object()) invalid(path, "expected an object");
    SpectralModel m;
    if (j.contains("atoms")) {
        const json& atoms = j["atoms"];
        const std::string ap = field(path, "atoms");
        if (!atoms.is_array()) invalid(ap, "expected an array");
        for (std::size_t k = 0; k < atoms.size(); ++k) {
            const json& a = atoms[k];
            const std::string p = index(ap, k);
            Atom atom;
            if (a.is_number()) {
                atom.value = number_from_json(a, p);
            } else {
                atom.value = number_from_json(require(a, "value", p), field(p, "value"));
                if (a.contains("label")) atom.label = string_from_json(a["label"], field(p, "label"));
            }
            if (atom.label.empty()) atom.label = "h" + std::to_string(k + 1);
            if (!(atom.value > 0.0 && atom.value < 1.0)) invalid(field(p, "value"), "atom must lie in (0,1)");
            m.atoms.push_back(std::move(atom));
        }
    }
    auto read_interval = [](const json& obj, const std::string& p) {
        Interval iv;
        iv.lo = number_from_json(require(obj, "lo", p), field(p, "lo"));
        iv.hi = number_from_json(require(obj, "hi", p), field(p, "hi"));
        const std::string measure = string_from_json(require(obj, "measure_class", p), field(p, "measure_class"));
        if (measure == "absolutely_continuous")
            iv.measure = MeasureClass::absolutely_continuous;
        else if (measure == "unspecified")
            iv.measure = MeasureClass::unspecified;
        else
            invalid(field(p, "measure_class"), "expected absolutely_continuous or unspecified");
        return iv;
    };
    if (j.contains("intervals")) {
        const json& ivs = j["intervals"];
        const std::string ip = field(path, "intervals");
        if (!ivs.is_array()) invalid(ip, "expected an array");
        for (std::size_t k = 0; k < ivs.size(); ++k) m.intervals.push_back(read_interval(ivs[k], index(ip, k)));
    }
    // mixed list form: {"lo", "hi", "measure_class"} or {"limit_point": v}
    if (j.contains("essential")) {
        const json& ess = j["essential"];
        const std::string ep = field(path, "essential");
        if (!ess.is_array()) invalid(ep, "expected an array");
        for (std::size_t k = 0; k < ess.size(); ++k) {
            const std::string p = index(ep, k);
            if (ess[k].is_object() && ess[k].contains("limit_point"))
                m.limit_points.push_back(number_from_json(ess[k]["limit_point"], field(p, "limit_point")));
            else
                m.intervals.push_back(read_interval(ess[k], p));
        }
    }
    if (j.contains("limit_points")) {
        const json& lps = j["limit_points"];
        const std::string lp = field(path, "limit_points");
        if (!lps.is_array()) invalid(lp, "expected an array");
        for (std::size_t k = 0; k < lps.size(); ++k) m.limit_points.push_back(number_from_json(lps[k], index(lp, k)));
    }
    try {
        m.validate();
    } catch (const Error& e) {
        invalid(path, e.what());
    }
    return m;
}

ProblemFile parse_problem(const json& doc) {
    if (!doc.is_object()) invalid("$", "expected a JSON object");
    const std::string kind = string_from_json(require(doc, "kind", "$"), "kind");
    ProblemFile out;
    if (kind == "projection_pair") {
        out.kind = ProblemKind::projection_pair;
        out.p = matrix_from_json(require(doc, "P", "$"), "P");
        out.q = matrix_from_json(require(doc, "Q", "$"), "Q");
        if (doc.contains("A")) out.a = matrix_from_json(doc["A"], "A");
        if (out.p->rows() != out.p->cols()) invalid("P", "must be square");
        if (out.q->rows() != out.p->rows() || out.q->cols() != out.p->cols()) invalid("Q", "must match the shape of P");
        if (out.a && (out.a->rows() != out.p->rows() || out.a->cols() != out.p->cols()))
            invalid("A", "must match the shape of P");
    } else if (kind == "skew") {
        out.kind = ProblemKind::skew;
        out.t = matrix_from_json(require(doc, "T", "$"), "T");
        if (out.t->rows() != out.t->cols()) invalid("T", "must be square");
    } else if (kind == "element") {
        out.kind = ProblemKind::element;
        out.element = element_from_json(doc);
    } else if (kind == "model_family") {
        out.kind = ProblemKind::model_family;
        const std::string family = string_from_json(require(doc, "family", "$"), "family");
        if (family != "example3") invalid("family", "unknown family '" + family + "'");
        const std::string variant = string_from_json(require(doc, "variant", "$"), "variant");
        if (variant == "one_over_n")
            out.variant = Example3Variant::one_over_n;
        else if (variant == "two_over_n")
            out.variant = Example3Variant::two_over_n;
        else
            invalid("variant", "expected one_over_n or two_over_n");
        if (doc.contains("n_atoms")) out.n_atoms = count_from_json(doc["n_atoms"], "n_atoms");
        if (out.n_atoms < 1) invalid("n_atoms", "must be at least 1");
        if (doc.contains("operator")) {
            const std::string op = string_from_json(doc["operator"], "operator");
            if (op == "A")
                out.op = TruncatedOperator::a;
            else if (op == "T")
                out.op = TruncatedOperator::t;
            else
                invalid("operator", "expected \"A\" or \"T\"");
        }
    } else {
        invalid("kind", "expected projection_pair, skew, element or model_family");
    }
    return out;
}

ProblemFile parse_problem_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ValidationError, std::string("malformed JSON: ") + e.what());
    }
    return parse_problem(doc);
}

ProblemFile load_problem(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ValidationError, "cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_problem_text(buffer.str());
}

// --- serialization ---------------------------------------------------------

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const SpectralModel& m) {
    json atoms = json::array();
    for (const auto& a : m.atoms) atoms.push_back({{"value", a.value}, {"label", a.label}});
    json intervals = json::array();
    for (const auto& iv : m.intervals)
        intervals.push_back({{"lo", iv.lo}, {"hi", iv.hi}, {"measure_class", to_string(iv.measure)}});
    return {{"atoms", atoms}, {"intervals", intervals}, {"limit_points", m.limit_points}};
}

json to_json(const WStarElement& a) {
    json scalars = json::object();
    for (Corner c : kCorners)
        if (const auto& v = at(a.scalars(), c)) scalars[to_string(c)] = to_json(*v);
    json symbol = json::array();
    for (const auto& row : a.symbol()) {
        json r = json::array();
        for (const auto& e : row) {
            if (e.is_table()) {
                json t = json::array();
                for (const auto& [x, v] : e.values()) t.push_back(json::array({x, to_json(v)}));
                r.push_back(std::move(t));
            } else {
                r.push_back(format_expression(e.expression()));
            }
        }
        symbol.push_back(std::move(r));
    }
    return {{"kind", "element"}, {"scalars", scalars}, {"symbol", symbol}, {"model", to_json(a.model())}};
}

json to_json(const MaximizerSet& s) {
    json points = json::array();
    for (const auto& p : s.points)
        points.push_back({{"x", p.x},
                          {"kind", to_string(p.kind)},
                          {"lo", p.lo},
                          {"hi", p.hi},
                          {"measure_class", to_string(p.measure)}});
    return {{"value", s.value}, {"points", points}};
}

json to_json(const AttainmentVerdict& v) {
    return {{"norm", v.norm},
            {"lambda_max", v.lambda_max},
            {"attained", v.attained},
            {"clause", to_string(v.clause)},
            {"sigma", to_json(v.sigma)},
            {"sigma_text", describe_sigma(v.sigma)}};
}

json to_json(const HalmosDecomposition& d) {
    json dims = json::object();
    json lambda = json::array();
    json bases = json::object();
    for (Corner c : kCorners) {
        const auto cols = d.subspace(c).cols();
        dims[to_string(c)] = cols;
        if (cols > 0) lambda.push_back(to_string(c));
        bases[to_string(c)] = to_json(d.subspace(c));
    }
    bases["generic_first"] = to_json(d.generic_first);
    bases["generic_second"] = to_json(d.generic_second);
    return {{"dimension", d.dimension},
            {"subspace_dims", dims},
            {"present", lambda},
            {"generic_dimension", d.generic_dimension()},
            {"h_values", d.h_values},
            {"bases", bases}};
}

json to_json(const SkewAnalysis& s) {
    return {{"t_norm", s.t_norm},
            {"pq_norm", s.pq_norm},
            {"afriat_residual", s.afriat_residual},
            {"dim_m01", s.dim_m01},
            {"dim_m10", s.dim_m10},
            {"h_eigenvalues", s.h_eigenvalues},
            {"h_model", to_json(s.h_model)},
            {"min_spectrum_is_atom", s.h_model.min_is_atom()}};
}

json to_json(const TrialReport& r) {
    json failures = json::array();
    for (const auto& f : r.failures)
        failures.push_back({{"trial", f.trial}, {"quantity", f.quantity}, {"expected", f.expected}, {"got", f.got}});
    return {{"seed", r.seed},
            {"dimension", r.dimension},
            {"trials", r.trials},
            {"tolerance", r.tolerance},
            {"max_residual", r.max_residual},
            {"max_roundtrip_residual", r.max_roundtrip_residual},
            {"failures", failures},
            {"passed", r.passed()}};
}

std::string describe_sigma(const MaximizerSet& s) {
    if (s.points.empty()) return "(none)";
    std::string out;
    for (const auto& p : s.points) {
        if (!out.empty()) out += "; ";
        switch (p.kind) {
        case PointKind::atom: out += "atom " + format_real(p.x); break;
        case PointKind::limit_point: out += "limit point " + format_real(p.x); break;
        case PointKind::essential_interior: out += "essential point " + format_real(p.x); break;
        case PointKind::interval_plateau:
            out += "plateau [" + format_real(p.lo) + ", " + format_real(p.hi) + "]";
            break;
        }
    }
    return out;
}

} // namespace twoproj
