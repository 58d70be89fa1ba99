#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace twoproj {

enum class ErrorKind {
    // input / validation class
    NotHermitian,
    NotProjection,
    NotIdempotent,
    NotSkew,
    NotInAlgebra,
    DegenerateSpectrum,
    ModelMismatch,
    EmptyModel,
    ValidationError,
    SyntaxError,
    EvalError,
    // numerical failure class
    NoConvergence,
    SingularMatrix,
    PairingFailure,
    AfriatViolation,
    RadicandNegative,
    // verdict depends on information the model does not carry
    IndeterminateMeasure,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& what)
        : Error(ErrorKind::SyntaxError, what), offset_(offset), expected_(std::move(expected)) {}

    /// Byte offset into the source text.
    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

enum class EvalFailure { DivisionByZero, NonFiniteResult };

class EvalError : public Error {
public:
    EvalError(EvalFailure reason, std::optional<double> x, const std::string& what)
        : Error(ErrorKind::EvalError, what), reason_(reason), x_(x) {}

    EvalFailure reason() const noexcept { return reason_; }
    /// The evaluation point, when known.
    std::optional<double> x() const noexcept { return x_; }

private:
    EvalFailure reason_;
    std::optional<double> x_;
};

} // namespace twoproj
