#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace twoproj {

using Complex = std::complex<double>;

/// Dense row-major complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static ComplexMatrix diagonal(std::span<const double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Complex> entries() const noexcept { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix column(std::size_t c) const;
    /// Columns [first, first+count).
    ComplexMatrix columns(std::size_t first, std::size_t count) const;

    /// Largest entry modulus.
    double max_abs() const noexcept;
    double frobenius() const noexcept;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex s);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);

/// Columns of `a` followed by columns of `b` (row counts must agree; either may be empty).
ComplexMatrix hconcat(const ComplexMatrix& a, const ComplexMatrix& b);

/// Max-entry distance.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigenSystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column k belongs to values[k]
};

/// Full eigensystem of a Hermitian matrix by cyclic complex Jacobi rotations.
/// Symmetry is checked against tol * max(1, max|M_ij|).
EigenSystem hermitian_eig(const ComplexMatrix& m, double tol = 1e-10);

/// Singular values (descending) by one-sided Jacobi; `left` receives the
/// normalized left singular vectors when non-null.
std::vector<double> singular_values(const ComplexMatrix& m, ComplexMatrix* left = nullptr);

double largest_singular_value(const ComplexMatrix& m);

/// Orthonormal basis of the column space; singular values at or below
/// tol * sigma_max count as zero.
ComplexMatrix orthonormal_range(const ComplexMatrix& m, double tol = 1e-10);

/// P = P* and P^2 = P, both within tol in the max-entry norm.
bool check_orthogonal_projection(const ComplexMatrix& m, double tol = 1e-10);

/// Solves A X = B by LU with partial pivoting. Throws SingularMatrix.
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix inverse(const ComplexMatrix& a);

/// V V* for a column family V.
ComplexMatrix range_projector(const ComplexMatrix& basis);

} // namespace twoproj
