#pragma once

#include "twoproj/dense.hpp"
#include "twoproj/expr.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace twoproj {

enum class MeasureClass { absolutely_continuous, unspecified };

const char* to_string(MeasureClass m) noexcept;

/// Eigenvalue of H; carries nonzero spectral mass.
struct Atom {
    double value = 0.0;
    std::string label;
};

/// Essential component [lo, hi] of the spectrum with a declared measure class.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    MeasureClass measure = MeasureClass::unspecified;
};

/// Finite description of the spectrum of H and of which of its points carry mass.
/// Limit points carry none. An empty model means the generic part M (+) M is absent.
struct SpectralModel {
    std::vector<Atom> atoms;
    std::vector<Interval> intervals;
    std::vector<double> limit_points;

    bool empty() const noexcept { return atoms.empty() && intervals.empty() && limit_points.empty(); }
    bool has_essential() const noexcept { return !intervals.empty() || !limit_points.empty(); }

    /// min sigma(H); model must be nonempty.
    double min_point() const;
    /// True when min sigma(H) is an atom.
    bool min_is_atom() const;

    /// Throws ValidationError naming the offending field.
    void validate() const;

    /// Same spectral data; labels are ignored.
    bool same_spectrum(const SpectralModel& other) const noexcept;

    /// Atoms at the given values labelled h1, h2, ...
    static SpectralModel from_atoms(const std::vector<double>& values);
};

/// Index of the intersection subspaces M_00, M_01, M_10, M_11.
enum class Corner { m00 = 0, m01 = 1, m10 = 2, m11 = 3 };

const char* to_string(Corner c) noexcept;
inline constexpr std::array<Corner, 4> kCorners{Corner::m00, Corner::m01, Corner::m10, Corner::m11};

/// a_ij on the present subspaces; std::nullopt marks an absent M_ij.
using Scalars = std::array<std::optional<Complex>, 4>;

inline std::optional<Complex>& at(Scalars& s, Corner c) { return s[static_cast<int>(c)]; }
inline const std::optional<Complex>& at(const Scalars& s, Corner c) { return s[static_cast<int>(c)]; }

/// One entry phi_ij of the symbol: an expression in x, or a table of values at atoms.
class SymbolEntry {
public:
    using Table = std::vector<std::pair<double, Complex>>;

    SymbolEntry() : SymbolEntry(Expr()) {}
    SymbolEntry(Expr e) : repr_(std::move(e)) {}  // NOLINT: implicit by intent
    static SymbolEntry table(Table values);

    bool is_table() const noexcept { return std::holds_alternative<Table>(repr_); }
    const Expr& expression() const { return std::get<Expr>(repr_); }
    const Table& values() const { return std::get<Table>(repr_); }

    /// Tables answer only at their atoms (exact match or within 1e-12).
    Complex at(double x) const;

    std::string describe() const;

private:
    std::variant<Expr, Table> repr_;
};

using Symbol = std::array<std::array<SymbolEntry, 2>, 2>;
using Matrix2 = std::array<std::array<Complex, 2>, 2>;

/// An operator of W*(P, Q): scalars on the present M_ij plus the 2x2 symbol over sigma(H).
class WStarElement {
public:
    const Scalars& scalars() const noexcept { return scalars_; }
    const Symbol& symbol() const noexcept { return symbol_; }
    const SpectralModel& model() const noexcept { return model_; }

    Matrix2 symbol_matrix(double x) const;
    bool has_generic_part() const noexcept { return !model_.empty(); }
    bool uses_tables() const noexcept;
    /// max |a_ij| over the present subspaces, or nullopt if none is present.
    std::optional<double> max_scalar_modulus() const;

    friend WStarElement build_element(Scalars, Symbol, SpectralModel);

private:
    WStarElement(Scalars s, Symbol sym, SpectralModel m)
        : scalars_(std::move(s)), symbol_(std::move(sym)), model_(std::move(m)) {}

    Scalars scalars_;
    Symbol symbol_;
    SpectralModel model_;
};

/// Validates the model and checks that every entry evaluates finitely on all
/// atoms, limit points and a 1024-point grid per interval.
WStarElement build_element(Scalars scalars, Symbol symbol, SpectralModel model);

struct SymbolSample {
    double x = 0.0;
    double phi = 0.0;    // squared Frobenius norm of the symbol
    Complex omega{};     // determinant of the symbol
    double psi = 0.0;    // phi + sqrt(phi^2 - 4|omega|^2)
};

SymbolSample symbol_at(const WStarElement& a, double x);

WStarElement adjoint(const WStarElement& a);
/// Requires the same spectral model and the same present subspaces.
WStarElement multiply(const WStarElement& a, const WStarElement& b);
WStarElement add(const WStarElement& a, const WStarElement& b);
WStarElement scale(Complex s, const WStarElement& a);
WStarElement identity_element(const SpectralModel& model, const std::array<bool, 4>& present);

struct SearchOptions;
/// max( max |a_ij|, sqrt(lambda_max) ), each term omitted when its part is absent.
double norm(const WStarElement& a);
double norm(const WStarElement& a, const SearchOptions& options);

} // namespace twoproj
