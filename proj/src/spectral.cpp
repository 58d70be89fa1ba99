#include "twoproj/spectral.hpp"

#include "twoproj/attain.hpp"
#include "twoproj/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace twoproj {

const char* to_string(MeasureClass m) noexcept {
    return m == MeasureClass::absolutely_continuous ? "absolutely_continuous" : "unspecified";
}

const char* to_string(Corner c) noexcept {
    switch (c) {
    case Corner::m00: return "00";
    case Corner::m01: return "01";
    case Corner::m10: return "10";
    case Corner::m11: return "11";
    }
    return "?";
}

// --- SpectralModel ---------------------------------------------------------

double SpectralModel::min_point() const {
    if (empty()) throw Error(ErrorKind::EmptyModel, "spectral model is empty");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : atoms) best = std::min(best, a.value);
    for (const auto& iv : intervals) best = std::min(best, iv.lo);
    for (double p : limit_points) best = std::min(best, p);
    return best;
}

bool SpectralModel::min_is_atom() const {
    const double lo = min_point();
    return std::any_of(atoms.begin(), atoms.end(), [&](const Atom& a) { return a.value == lo; });
}

void SpectralModel::validate() const {
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        const double v = atoms[k].value;
        if (!(v > 0.0 && v < 1.0))
            throw Error(ErrorKind::ValidationError,
                        "atoms[" + std::to_string(k) + "]: atom must lie in (0,1), got " + format_real(v));
        for (std::size_t j = 0; j < k; ++j)
            if (atoms[j].value == v)
                throw Error(ErrorKind::ValidationError,
                            "atoms[" + std::to_string(k) + "]: duplicate atom value " + format_real(v));
    }
    for (std::size_t k = 0; k < intervals.size(); ++k) {
        const auto& iv = intervals[k];
        if (!(iv.lo >= 0.0 && iv.hi <= 1.0 && iv.lo <= iv.hi))
            throw Error(ErrorKind::ValidationError,
                        "intervals[" + std::to_string(k) + "]: need 0 <= lo <= hi <= 1");
    }
    for (std::size_t k = 0; k < limit_points.size(); ++k) {
        const double v = limit_points[k];
        if (!(v >= 0.0 && v <= 1.0))
            throw Error(ErrorKind::ValidationError,
                        "limit_points[" + std::to_string(k) + "]: limit point must lie in [0,1]");
    }
}

bool SpectralModel::same_spectrum(const SpectralModel& other) const noexcept {
    if (atoms.size() != other.atoms.size() || intervals.size() != other.intervals.size() ||
        limit_points != other.limit_points)
        return false;
    for (std::size_t k = 0; k < atoms.size(); ++k)
        if (atoms[k].value != other.atoms[k].value) return false;
    for (std::size_t k = 0; k < intervals.size(); ++k)
        if (intervals[k].lo != other.intervals[k].lo || intervals[k].hi != other.intervals[k].hi ||
            intervals[k].measure != other.intervals[k].measure)
            return false;
    return true;
}

SpectralModel SpectralModel::from_atoms(const std::vector<double>& values) {
    SpectralModel m;
    for (std::size_t k = 0; k < values.size(); ++k)
        m.atoms.push_back({values[k], "h" + std::to_string(k + 1)});
    return m;
}

// --- SymbolEntry -----------------------------------------------------------

SymbolEntry SymbolEntry::table(Table values) {
    SymbolEntry e;
    e.repr_ = std::move(values);
    return e;
}

Complex SymbolEntry::at(double x) const {
    if (!is_table()) return evaluate(expression(), x);
    const auto& t = values();
    const std::pair<double, Complex>* nearest = nullptr;
    for (const auto& entry : t) {
        if (entry.first == x) return entry.second;
        if (!nearest || std::abs(entry.first - x) < std::abs(nearest->first - x)) nearest = &entry;
    }
    if (nearest && std::abs(nearest->first - x) <= 1e-12) return nearest->second;
    throw Error(ErrorKind::ValidationError,
                "pointwise symbol table is undefined at x = " + format_real(x));
}

std::string SymbolEntry::describe() const {
    if (!is_table()) return format_expression(expression());
    return "table[" + std::to_string(values().size()) + "]";
}

// --- WStarElement ----------------------------------------------------------

Matrix2 WStarElement::symbol_matrix(double x) const {
    Matrix2 m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m[i][j] = symbol_[i][j].at(x);
    return m;
}

bool WStarElement::uses_tables() const noexcept {
    for (const auto& row : symbol_)
        for (const auto& e : row)
            if (e.is_table()) return true;
    return false;
}

std::optional<double> WStarElement::max_scalar_modulus() const {
    std::optional<double> best;
    for (const auto& a : scalars_)
        if (a) best = std::max(best.value_or(0.0), std::abs(*a));
    return best;
}

namespace {

std::string entry_name(int i, int j) {
    return "symbol[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

void check_entry(const SymbolEntry& e, int i, int j, const SpectralModel& model) {
    if (e.is_table()) {
        if (model.has_essential())
            throw Error(ErrorKind::ValidationError,
                        entry_name(i, j) + ": pointwise tables require a model without essential parts");
        if (e.values().size() != model.atoms.size())
            throw Error(ErrorKind::ValidationError, entry_name(i, j) + ": table does not cover the atoms");
    }
    auto probe = [&](double x) {
        try {
            (void)e.at(x);
        } catch (const EvalError& err) {
            throw EvalError(err.reason(), x, entry_name(i, j) + ": " + err.what());
        } catch (const Error& err) {
            throw Error(ErrorKind::ValidationError, entry_name(i, j) + ": " + err.what());
        }
    };
    for (const auto& a : model.atoms) probe(a.value);
    for (double p : model.limit_points) probe(p);
    constexpr int kProbeGrid = 1024;
    for (const auto& iv : model.intervals)
        for (int k = 0; k < kProbeGrid; ++k)
            probe(iv.lo + (iv.hi - iv.lo) * k / (kProbeGrid - 1));
}

bool same_presence(const Scalars& a, const Scalars& b) {
    for (int k = 0; k < 4; ++k)
        if (a[k].has_value() != b[k].has_value()) return false;
    return true;
}

void require_compatible(const WStarElement& a, const WStarElement& b) {
    if (!a.model().same_spectrum(b.model()))
        throw Error(ErrorKind::ModelMismatch, "elements live over different spectral models");
    if (!same_presence(a.scalars(), b.scalars()))
        throw Error(ErrorKind::ModelMismatch, "elements have different present subspaces");
}

// Converts every entry to a table over the atoms.
Symbol tabulate(const WStarElement& a) {
    Symbol out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            SymbolEntry::Table t;
            for (const auto& atom : a.model().atoms)
                t.emplace_back(atom.value, a.symbol()[i][j].at(atom.value));
            out[i][j] = SymbolEntry::table(std::move(t));
        }
    return out;
}

template <class Combine>
SymbolEntry combine_tables(const SymbolEntry& x, const SymbolEntry& y, Combine f) {
    SymbolEntry::Table t;
    for (std::size_t k = 0; k < x.values().size(); ++k)
        t.emplace_back(x.values()[k].first, f(x.values()[k].second, y.values()[k].second));
    return SymbolEntry::table(std::move(t));
}

} // namespace

WStarElement build_element(Scalars scalars, Symbol symbol, SpectralModel model) {
    model.validate();
    for (const auto& a : scalars)
        if (a && !(std::isfinite(a->real()) && std::isfinite(a->imag())))
            throw Error(ErrorKind::ValidationError, "scalars: values must be finite");
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) check_entry(symbol[i][j], i, j, model);
    return WStarElement(std::move(scalars), std::move(symbol), std::move(model));
}

SymbolSample symbol_at(const WStarElement& a, double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw Error(ErrorKind::ValidationError, "symbol_at: x must lie in [0,1], got " + format_real(x));
    const Matrix2 m = a.symbol_matrix(x);
    SymbolSample s;
    s.x = x;
    s.phi = std::norm(m[0][0]) + std::norm(m[0][1]) + std::norm(m[1][0]) + std::norm(m[1][1]);
    s.omega = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    double radicand = s.phi * s.phi - 4.0 * std::norm(s.omega);
    if (radicand < 0.0) {
        if (radicand < -1e-12 * (1.0 + s.phi * s.phi))
            throw Error(ErrorKind::RadicandNegative,
                        "phi^2 - 4|omega|^2 = " + format_real(radicand) + " at x = " + format_real(x));
        radicand = 0.0;
    }
    s.psi = s.phi + std::sqrt(radicand);
    return s;
}

WStarElement adjoint(const WStarElement& a) {
    Scalars s = a.scalars();
    for (auto& v : s)
        if (v) v = std::conj(*v);
    Symbol out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const SymbolEntry& e = a.symbol()[j][i];
            if (e.is_table()) {
                auto t = e.values();
                for (auto& entry : t) entry.second = std::conj(entry.second);
                out[i][j] = SymbolEntry::table(std::move(t));
            } else {
                out[i][j] = conj(e.expression());
            }
        }
    return build_element(std::move(s), std::move(out), a.model());
}

WStarElement multiply(const WStarElement& a, const WStarElement& b) {
    require_compatible(a, b);
    Scalars s;
    for (int k = 0; k < 4; ++k)
        if (a.scalars()[k]) s[k] = *a.scalars()[k] * *b.scalars()[k];
    Symbol out;
    if (a.uses_tables() || b.uses_tables()) {
        const Symbol ta = tabulate(a);
        const Symbol tb = tabulate(b);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                SymbolEntry::Table t;
                for (std::size_t k = 0; k < a.model().atoms.size(); ++k)
                    t.emplace_back(ta[i][0].values()[k].first,
                                   ta[i][0].values()[k].second * tb[0][j].values()[k].second +
                                       ta[i][1].values()[k].second * tb[1][j].values()[k].second);
                out[i][j] = SymbolEntry::table(std::move(t));
            }
    } else {
        const auto& x = a.symbol();
        const auto& y = b.symbol();
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                out[i][j] = x[i][0].expression() * y[0][j].expression() +
                            x[i][1].expression() * y[1][j].expression();
    }
    return build_element(std::move(s), std::move(out), a.model());
}

WStarElement add(const WStarElement& a, const WStarElement& b) {
    require_compatible(a, b);
    Scalars s;
    for (int k = 0; k < 4; ++k)
        if (a.scalars()[k]) s[k] = *a.scalars()[k] + *b.scalars()[k];
    Symbol out;
    if (a.uses_tables() || b.uses_tables()) {
        const Symbol ta = tabulate(a);
        const Symbol tb = tabulate(b);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                out[i][j] = combine_tables(ta[i][j], tb[i][j], [](Complex u, Complex v) { return u + v; });
    } else {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                out[i][j] = a.symbol()[i][j].expression() + b.symbol()[i][j].expression();
    }
    return build_element(std::move(s), std::move(out), a.model());
}

WStarElement scale(Complex c, const WStarElement& a) {
    Scalars s = a.scalars();
    for (auto& v : s)
        if (v) *v *= c;
    Symbol out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const SymbolEntry& e = a.symbol()[i][j];
            if (e.is_table()) {
                auto t = e.values();
                for (auto& entry : t) entry.second *= c;
                out[i][j] = SymbolEntry::table(std::move(t));
            } else {
                out[i][j] = Expr::constant(c) * e.expression();
            }
        }
    return build_element(std::move(s), std::move(out), a.model());
}

WStarElement identity_element(const SpectralModel& model, const std::array<bool, 4>& present) {
    Scalars s;
    for (int k = 0; k < 4; ++k)
        if (present[k]) s[k] = 1.0;
    Symbol sym;
    sym[0][0] = Expr::constant(1.0);
    sym[1][1] = Expr::constant(1.0);
    return build_element(std::move(s), std::move(sym), model);
}

double norm(const WStarElement& a) { return norm(a, SearchOptions{}); }

double norm(const WStarElement& a, const SearchOptions& options) {
    const auto scalar = a.max_scalar_modulus();
    if (!a.has_generic_part()) return scalar.value_or(0.0);
    const double generic = std::sqrt(lambda_max(a, options).value);
    return scalar ? std::max(*scalar, generic) : generic;
}

} // namespace twoproj
