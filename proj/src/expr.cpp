#include "twoproj/expr.hpp"

#include "twoproj/error.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <system_error>
#include <vector>

namespace twoproj {

struct Expr::Node {
    Op op;
    Complex value{};
    int exponent = 0;
    Expr lhs_child{nullptr};
    Expr rhs_child{nullptr};
};

namespace {

bool is_binary(Expr::Op op) {
    using Op = Expr::Op;
    return op == Op::Add || op == Op::Sub || op == Op::Mul || op == Op::Div;
}

bool is_unary(Expr::Op op) {
    using Op = Expr::Op;
    return op == Op::Sqrt || op == Op::Abs || op == Op::Conj || op == Op::Neg;
}

} // namespace

Expr::Expr() : Expr(constant(0.0)) {}

Expr Expr::constant(Complex value) {
    return Expr(std::make_shared<const Node>(Node{Op::Constant, value}));
}

Expr Expr::variable() { return Expr(std::make_shared<const Node>(Node{Op::Variable})); }

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
    if (!is_binary(op)) throw Error(ErrorKind::ValidationError, "not a binary operator");
    return Expr(std::make_shared<const Node>(Node{op, {}, 0, std::move(lhs), std::move(rhs)}));
}

Expr Expr::unary(Op op, Expr operand) {
    if (!is_unary(op)) throw Error(ErrorKind::ValidationError, "not a unary operator");
    return Expr(std::make_shared<const Node>(Node{op, {}, 0, std::move(operand), Expr(nullptr)}));
}

Expr Expr::power(Expr base, int exponent) {
    return Expr(std::make_shared<const Node>(Node{Op::Pow, {}, exponent, std::move(base), Expr(nullptr)}));
}

Expr::Op Expr::op() const noexcept { return node_->op; }
Complex Expr::value() const noexcept { return node_->value; }
int Expr::exponent() const noexcept { return node_->exponent; }
const Expr& Expr::lhs() const { return node_->lhs_child; }
const Expr& Expr::rhs() const { return node_->rhs_child; }

std::size_t Expr::node_count() const {
    std::size_t n = 1;
    if (node_->lhs_child.node_) n += node_->lhs_child.node_count();
    if (node_->rhs_child.node_) n += node_->rhs_child.node_count();
    return n;
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    if (a.op() != b.op()) return false;
    switch (a.op()) {
    case Expr::Op::Constant: return a.value() == b.value();
    case Expr::Op::Variable: return true;
    case Expr::Op::Pow: return a.exponent() == b.exponent() && a.lhs() == b.lhs();
    default:
        if (is_unary(a.op())) return a.lhs() == b.lhs();
        return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
}

// --- folding builders ------------------------------------------------------

Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() + b.value());
    if (a.is_constant(0.0)) return b;
    if (b.is_constant(0.0)) return a;
    return Expr::binary(Expr::Op::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() - b.value());
    if (b.is_constant(0.0)) return a;
    if (a.is_constant(0.0)) return -b;
    return Expr::binary(Expr::Op::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() * b.value());
    if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr::constant(0.0);
    if (a.is_constant(1.0)) return b;
    if (b.is_constant(1.0)) return a;
    if (a.is_constant(-1.0)) return -b;
    if (b.is_constant(-1.0)) return -a;
    return Expr::binary(Expr::Op::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant() && b.value() != Complex{})
        return Expr::constant(a.value() / b.value());
    if (b.is_constant(1.0)) return a;
    return Expr::binary(Expr::Op::Div, a, b);
}

Expr operator-(const Expr& a) {
    if (a.is_constant()) return Expr::constant(-a.value());
    if (a.op() == Expr::Op::Neg) return a.lhs();
    return Expr::unary(Expr::Op::Neg, a);
}

Expr conj(const Expr& e) {
    if (e.is_constant()) return Expr::constant(std::conj(e.value()));
    if (e.op() == Expr::Op::Variable) return e;
    if (e.op() == Expr::Op::Conj) return e.lhs();
    return Expr::unary(Expr::Op::Conj, e);
}

Expr sqrt(const Expr& e) { return Expr::unary(Expr::Op::Sqrt, e); }
Expr abs(const Expr& e) { return Expr::unary(Expr::Op::Abs, e); }

Expr pow(const Expr& base, int exponent) {
    if (exponent == 1) return base;
    if (exponent == 0) return Expr::constant(1.0);
    return Expr::power(base, exponent);
}

// --- parser ----------------------------------------------------------------

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr parse() {
        Expr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail({"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        std::string msg = "syntax error at offset " + std::to_string(pos_) + ": expected ";
        for (std::size_t k = 0; k < expected.size(); ++k) {
            if (k) msg += k + 1 == expected.size() ? " or " : ", ";
            msg += expected[k];
        }
        throw SyntaxError(pos_, std::move(expected), msg);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail({std::string("'") + c + "'"});
    }

    static bool digit(char c) { return c >= '0' && c <= '9'; }

    Expr expr() {
        Expr lhs = term();
        for (;;) {
            if (accept('+'))
                lhs = Expr::binary(Expr::Op::Add, lhs, term());
            else if (accept('-'))
                lhs = Expr::binary(Expr::Op::Sub, lhs, term());
            else
                return lhs;
        }
    }

    Expr term() {
        Expr lhs = factor();
        for (;;) {
            if (accept('*'))
                lhs = Expr::binary(Expr::Op::Mul, lhs, factor());
            else if (accept('/'))
                lhs = Expr::binary(Expr::Op::Div, lhs, factor());
            else
                return lhs;
        }
    }

    Expr factor() {
        Expr base = atom();
        if (accept('^')) return Expr::power(base, integer());
        return base;
    }

    int integer() {
        skip_ws();
        const std::size_t start = pos_;
        if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
        if (pos_ >= text_.size() || !digit(text_[pos_])) {
            pos_ = start;
            fail({"integer"});
        }
        while (pos_ < text_.size() && digit(text_[pos_])) ++pos_;
        int value = 0;
        const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc{} || ptr != text_.data() + pos_) {
            pos_ = start;
            fail({"integer in range"});
        }
        return value;
    }

    Expr number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && digit(text_[pos_])) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && digit(text_[pos_])) ++pos_;
        }
        if (pos_ == start + 1 && text_[start] == '.') {
            pos_ = start;
            fail({"number"});
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
            if (look < text_.size() && digit(text_[look])) {
                pos_ = look;
                while (pos_ < text_.size() && digit(text_[pos_])) ++pos_;
            }
        }
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc{} || ptr != text_.data() + pos_) {
            pos_ = start;
            fail({"finite number"});
        }
        return Expr::constant(value);
    }

    Expr atom() {
        skip_ws();
        const std::vector<std::string> expected{"number", "'x'", "'i'", "'('", "'sqrt'", "'abs'", "'conj'", "'-'"};
        if (pos_ >= text_.size()) fail(expected);
        const char c = text_[pos_];
        if (digit(c) || c == '.') return number();
        if (c == '(') {
            ++pos_;
            Expr inner = expr();
            expect(')');
            return inner;
        }
        if (c == '-') {
            ++pos_;
            return Expr::unary(Expr::Op::Neg, atom());
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            const std::string_view word = text_.substr(start, pos_ - start);
            if (word == "x") return Expr::variable();
            if (word == "i") return Expr::constant(Complex(0.0, 1.0));
            Expr::Op op;
            if (word == "sqrt")
                op = Expr::Op::Sqrt;
            else if (word == "abs")
                op = Expr::Op::Abs;
            else if (word == "conj")
                op = Expr::Op::Conj;
            else {
                pos_ = start;
                fail(expected);
            }
            expect('(');
            Expr inner = expr();
            expect(')');
            return Expr::unary(op, inner);
        }
        fail(expected);
    }
};

} // namespace

Expr parse_expression(std::string_view text) { return Parser(text).parse(); }

// --- evaluation ------------------------------------------------------------

namespace {

Complex checked(Complex z, double x) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw EvalError(EvalFailure::NonFiniteResult, x,
                        "non-finite value at x = " + format_real(x));
    return z;
}

Complex divide(Complex num, Complex den, double x) {
    if (den == Complex{})
        throw EvalError(EvalFailure::DivisionByZero, x, "division by zero at x = " + format_real(x));
    return checked(num / den, x);
}

Complex eval(const Expr& e, double x) {
    using Op = Expr::Op;
    switch (e.op()) {
    case Op::Constant: return e.value();
    case Op::Variable: return x;
    case Op::Add: return checked(eval(e.lhs(), x) + eval(e.rhs(), x), x);
    case Op::Sub: return checked(eval(e.lhs(), x) - eval(e.rhs(), x), x);
    case Op::Mul: return checked(eval(e.lhs(), x) * eval(e.rhs(), x), x);
    case Op::Div: {
        const Complex num = eval(e.lhs(), x);
        return divide(num, eval(e.rhs(), x), x);
    }
    case Op::Pow: {
        const Complex base = eval(e.lhs(), x);
        const int n = e.exponent();
        Complex acc = 1.0;
        for (int k = 0; k < std::abs(n); ++k) acc = checked(acc * base, x);
        return n < 0 ? divide(1.0, acc, x) : acc;
    }
    case Op::Sqrt: {
        Complex z = eval(e.lhs(), x);
        // -0 imaginary parts would select the lower side of the branch cut
        if (z.imag() == 0.0) z.imag(0.0);
        return std::sqrt(z);
    }
    case Op::Abs: return std::abs(eval(e.lhs(), x));
    case Op::Conj: return std::conj(eval(e.lhs(), x));
    case Op::Neg: return -eval(e.lhs(), x);
    }
    return {};
}

} // namespace

Complex evaluate(const Expr& e, double x) { return checked(eval(e, x), x); }

// --- formatting ------------------------------------------------------------

std::string format_real(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf.data(), ptr);
}

namespace {

std::string format_constant(Complex c) {
    const double re = c.real();
    const double im = c.imag();
    auto real_part = [](double v) {
        return v < 0 || std::signbit(v) ? "(-" + format_real(-v) + ")" : format_real(v);
    };
    if (im == 0.0) return real_part(re);
    std::string imag = im == 1.0 ? "i" : "(" + real_part(im) + "*i)";
    if (re == 0.0) return imag;
    return "(" + real_part(re) + "+" + imag + ")";
}

} // namespace

std::string format_expression(const Expr& e) {
    using Op = Expr::Op;
    switch (e.op()) {
    case Op::Constant: return format_constant(e.value());
    case Op::Variable: return "x";
    case Op::Add: return "(" + format_expression(e.lhs()) + "+" + format_expression(e.rhs()) + ")";
    case Op::Sub: return "(" + format_expression(e.lhs()) + "-" + format_expression(e.rhs()) + ")";
    case Op::Mul: return "(" + format_expression(e.lhs()) + "*" + format_expression(e.rhs()) + ")";
    case Op::Div: return "(" + format_expression(e.lhs()) + "/" + format_expression(e.rhs()) + ")";
    case Op::Pow: return "(" + format_expression(e.lhs()) + "^" + std::to_string(e.exponent()) + ")";
    case Op::Sqrt: return "sqrt(" + format_expression(e.lhs()) + ")";
    case Op::Abs: return "abs(" + format_expression(e.lhs()) + ")";
    case Op::Conj: return "conj(" + format_expression(e.lhs()) + ")";
    case Op::Neg: return "-(" + format_expression(e.lhs()) + ")";
    }
    return {};
}

} // namespace twoproj
