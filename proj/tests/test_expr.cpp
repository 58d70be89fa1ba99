#include "twoproj/error.hpp"
#include "twoproj/expr.hpp"

#include <doctest.h>

#include <cmath>
#include <optional>
#include <random>
#include <string>

using namespace twoproj;

namespace {

// Random source text drawn directly from the grammar.
struct TextGen {
    std::mt19937 gen;
    bool complex_ok = true;
    bool conj_abs_ok = true;

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(gen); }

    std::string number() {
        static const char* pool[] = {"0", "1", "2", "0.5", "3.25", "10", "1e-3", "2.5E+1", "0.125", "7"};
        return pool[pick(10)];
    }

    std::string atom(int depth) {
        if (depth <= 0) {
            const int k = pick(complex_ok ? 3 : 2);
            return k == 0 ? number() : k == 1 ? std::string("x") : std::string("i");
        }
        switch (pick(conj_abs_ok ? 6 : 4)) {
        case 0: return "(" + expr(depth - 1) + ")";
        case 1: return "sqrt(" + expr(depth - 1) + ")";
        case 2: return "-(" + expr(depth - 1) + ")";
        case 3: return "-" + atom(depth - 1);
        case 4: return "abs(" + expr(depth - 1) + ")";
        default: return "conj(" + expr(depth - 1) + ")";
        }
    }

    std::string factor(int depth) {
        std::string a = atom(depth);
        if (pick(4) == 0) a += "^" + std::to_string(pick(5) - 1);
        return a;
    }

    std::string term(int depth) {
        std::string t = factor(depth);
        for (int k = pick(3); k > 0; --k) t += (pick(2) ? " * " : "/") + factor(depth - 1);
        return t;
    }

    std::string expr(int depth) {
        std::string e = term(depth);
        for (int k = pick(3); k > 0; --k) e += (pick(2) ? " + " : "-") + term(depth - 1);
        return e;
    }
};

// Real-arithmetic reference evaluator; nullopt when a sqrt argument is negative
// or a denominator vanishes.
std::optional<double> real_eval(const Expr& e, double x) {
    using Op = Expr::Op;
    switch (e.op()) {
    case Op::Constant: return e.value().real();
    case Op::Variable: return x;
    case Op::Neg: {
        auto v = real_eval(e.lhs(), x);
        if (!v) return std::nullopt;
        return -*v;
    }
    case Op::Sqrt: {
        auto v = real_eval(e.lhs(), x);
        if (!v || *v < 0.0) return std::nullopt;
        return std::sqrt(*v);
    }
    case Op::Pow: {
        auto v = real_eval(e.lhs(), x);
        if (!v || (*v == 0.0 && e.exponent() < 0)) return std::nullopt;
        return std::pow(*v, e.exponent());
    }
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
        auto a = real_eval(e.lhs(), x);
        auto b = real_eval(e.rhs(), x);
        if (!a || !b) return std::nullopt;
        if (e.op() == Op::Add) return *a + *b;
        if (e.op() == Op::Sub) return *a - *b;
        if (e.op() == Op::Mul) return *a * *b;
        if (*b == 0.0) return std::nullopt;
        return *a / *b;
    }
    default: return std::nullopt;
    }
}

} // namespace

TEST_CASE("parse: tree shape") {
    const Expr e = parse_expression("sqrt(1/x - 1)");
    REQUIRE(e.op() == Expr::Op::Sqrt);
    const Expr& sub = e.lhs();
    REQUIRE(sub.op() == Expr::Op::Sub);
    CHECK(sub.rhs().is_constant(1.0));
    REQUIRE(sub.lhs().op() == Expr::Op::Div);
    CHECK(sub.lhs().lhs().is_constant(1.0));
    CHECK(sub.lhs().rhs().op() == Expr::Op::Variable);
}

TEST_CASE("parse: unary minus binds to the atom before the power") {
    CHECK(evaluate(parse_expression("-x^2"), 0.5) == Complex(0.25));
    CHECK(evaluate(parse_expression("-(x^2)"), 0.5) == Complex(-0.25));
    CHECK(evaluate(parse_expression("x^-2"), 0.5) == Complex(4.0));
}

TEST_CASE("parse: syntax errors report byte offsets") {
    auto offset_of = [](const char* text) -> std::optional<std::size_t> {
        try {
            parse_expression(text);
        } catch (const SyntaxError& e) {
            return e.offset();
        }
        return std::nullopt;
    };
    CHECK(offset_of("sqrt(") == 5u);
    CHECK(offset_of("") == 0u);
    CHECK(offset_of("x +") == 3u);
    CHECK(offset_of("x y") == 2u);
    CHECK(offset_of("(x") == 2u);
    CHECK(offset_of("x^1.5") == 3u);
    CHECK(offset_of("sin(x)") == 0u);
    try {
        parse_expression("sqrt(");
    } catch (const SyntaxError& e) {
        CHECK_FALSE(e.expected().empty());
        CHECK(e.kind() == ErrorKind::SyntaxError);
    }
}

TEST_CASE("evaluate: worked values") {
    CHECK(std::abs(evaluate(parse_expression("sqrt(1/x - 1)"), 0.2) - Complex(2.0)) < 1e-15);
    CHECK(evaluate(parse_expression("x"), 0.36) == Complex(0.36));
    CHECK(evaluate(parse_expression("conj(2+3*i)"), 0.7) == Complex(2.0, -3.0));
    CHECK(evaluate(parse_expression("sqrt(-1)"), 0.1) == Complex(0.0, 1.0));
    CHECK(evaluate(parse_expression("sqrt(-4 - 0*i)"), 0.1) == Complex(0.0, 2.0));
    CHECK(evaluate(parse_expression("abs(3+4*i)"), 0.1) == Complex(5.0));
    CHECK(evaluate(parse_expression("i^2"), 0.1) == Complex(-1.0));
}

TEST_CASE("evaluate: failures") {
    try {
        evaluate(parse_expression("1/x"), 0.0);
        FAIL("expected EvalError");
    } catch (const EvalError& e) {
        CHECK(e.reason() == EvalFailure::DivisionByZero);
        CHECK(e.x() == 0.0);
    }
    try {
        evaluate(parse_expression("10^400"), 0.5);
        FAIL("expected EvalError");
    } catch (const EvalError& e) {
        CHECK(e.reason() == EvalFailure::NonFiniteResult);
    }
}

TEST_CASE("format: canonical form") {
    CHECK(format_expression(Expr::constant(1.0)) == "1");
    CHECK(format_expression(Expr::unary(Expr::Op::Sqrt,
                                        Expr::binary(Expr::Op::Div, Expr::constant(1.0), Expr::variable()))) ==
          "sqrt((1/x))");
    CHECK(format_expression(parse_expression("x^2 + 1")) == "((x^2)+1)");
    CHECK(format_expression(parse_expression("-x")) == "-(x)");
    CHECK(format_real(0.1) == "0.1");
    CHECK(format_real(2.0) == "2");
}

TEST_CASE("format: non-real and negative constants keep their value") {
    for (Complex c : {Complex(-2.5), Complex(0.0, 1.0), Complex(1.5, -0.25), Complex(-3.0, 2.0)}) {
        const Expr e = Expr::constant(c) * Expr::variable();
        CHECK(evaluate(parse_expression(format_expression(e)), 0.3) == evaluate(e, 0.3));
    }
}

TEST_CASE("property: format/parse round trip over generated text") {
    TextGen g{std::mt19937(2024)};
    int checked = 0;
    for (int k = 0; k < 400; ++k) {
        const std::string text = g.expr(1 + k % 4);
        const Expr e = parse_expression(text);
        const std::string canonical = format_expression(e);
        const Expr again = parse_expression(canonical);
        CHECK_MESSAGE(again == e, text << " -> " << canonical);
        CHECK(format_expression(again) == canonical);
        ++checked;
    }
    CHECK(checked >= 100);
}

TEST_CASE("property: conj commutes with evaluation") {
    TextGen g{std::mt19937(99)};
    std::mt19937 xs(7);
    std::uniform_real_distribution<double> unit(0.01, 0.99);
    int evaluated = 0;
    for (int k = 0; k < 400; ++k) {
        const Expr e = parse_expression(g.expr(1 + k % 4));
        const double x = unit(xs);
        try {
            const Complex v = evaluate(e, x);
            const Complex folded = evaluate(conj(e), x);
            const Complex raw = evaluate(Expr::unary(Expr::Op::Conj, e), x);
            CHECK(raw == std::conj(v));
            CHECK(std::abs(folded - std::conj(v)) <= 1e-12 * (1.0 + std::abs(v)));
            ++evaluated;
        } catch (const EvalError&) {
        }
    }
    CHECK(evaluated >= 100);
}

TEST_CASE("property: real inputs give real outputs") {
    TextGen g{std::mt19937(31)};
    g.complex_ok = false;
    g.conj_abs_ok = false;
    std::mt19937 xs(3);
    std::uniform_real_distribution<double> unit(0.01, 0.99);
    int evaluated = 0;
    for (int k = 0; k < 600; ++k) {
        const Expr e = parse_expression(g.expr(1 + k % 4));
        const double x = unit(xs);
        const auto ref = real_eval(e, x);
        if (!ref || !std::isfinite(*ref)) continue;
        Complex v;
        try {
            v = evaluate(e, x);
        } catch (const EvalError&) {
            continue;
        }
        CHECK(std::abs(v.imag()) <= 1e-14 * (1.0 + std::abs(v.real())));
        CHECK(std::abs(v.real() - *ref) <= 1e-12 * (1.0 + std::abs(*ref)));
        ++evaluated;
    }
    CHECK(evaluated >= 100);
}

TEST_CASE("folding builders") {
    const Expr x = Expr::variable();
    CHECK((Expr::constant(0.0) + x) == x);
    CHECK((x * Expr::constant(1.0)) == x);
    CHECK((Expr::constant(0.0) * x).is_constant(0.0));
    CHECK((Expr::constant(2.0) * Expr::constant(3.0)).is_constant(6.0));
    CHECK(conj(conj(sqrt(x))) == sqrt(x));
    CHECK(conj(x) == x);
    CHECK(conj(Expr::constant(Complex(1.0, 2.0))).is_constant(Complex(1.0, -2.0)));
    CHECK(pow(x, 1) == x);
    CHECK(pow(x, 0).is_constant(1.0));
}
