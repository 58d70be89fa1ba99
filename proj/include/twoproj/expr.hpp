#pragma once

#include "twoproj/dense.hpp"

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

namespace twoproj {

/// Complex-valued functions of one real variable x.
///
/// Wire grammar (whitespace insignificant, 'i' is the imaginary unit):
///
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := atom ("^" integer)?
///   atom   := number | "x" | "i" | "(" expr ")"
///           | ("sqrt"|"abs"|"conj") "(" expr ")" | "-" atom
///
/// Note that "-x^2" is (-x)^2 under this grammar.
class Expr {
public:
    enum class Op { Constant, Variable, Add, Sub, Mul, Div, Pow, Sqrt, Abs, Conj, Neg };

    /// The constant 0.
    Expr();

    static Expr constant(Complex value);
    static Expr variable();
    /// Raw node constructors; no folding.
    static Expr binary(Op op, Expr lhs, Expr rhs);
    static Expr unary(Op op, Expr operand);
    static Expr power(Expr base, int exponent);

    Op op() const noexcept;
    Complex value() const noexcept;  // Constant only
    int exponent() const noexcept;   // Pow only
    const Expr& lhs() const;         // binary, Pow base, unary operand
    const Expr& rhs() const;         // binary only

    bool is_constant() const noexcept { return op() == Op::Constant; }
    bool is_constant(Complex c) const noexcept { return is_constant() && value() == c; }

    std::size_t node_count() const;

    friend bool operator==(const Expr& a, const Expr& b);

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

// Folding builders used by the symbol calculus. Constant subtrees collapse,
// 0 and 1 are absorbed, conj(conj(e)) = e and conj of x or a constant folds.
// 0*e folds to 0 even where e would fail to evaluate.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr conj(const Expr& e);
Expr sqrt(const Expr& e);
Expr abs(const Expr& e);
Expr pow(const Expr& base, int exponent);

/// Throws SyntaxError carrying the byte offset and the expected tokens.
Expr parse_expression(std::string_view text);

/// Principal-branch sqrt; division by exact zero and non-finite
/// intermediate values throw EvalError.
Complex evaluate(const Expr& e, double x);

/// Fully parenthesized canonical form; parse_expression(format_expression(e)) == e for
/// parser-produced trees. Other constants (negative or non-real) render value-preserving.
std::string format_expression(const Expr& e);

/// Shortest round-trip decimal rendering.
std::string format_real(double v);

} // namespace twoproj
