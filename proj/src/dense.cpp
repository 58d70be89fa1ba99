#include "twoproj/dense.hpp"

#include "twoproj/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace twoproj {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw Error(ErrorKind::ValidationError,
                    "matrix entry count " + std::to_string(data_.size()) + " does not match " +
                        std::to_string(rows_) + "x" + std::to_string(cols_));
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_)
            throw Error(ErrorKind::ValidationError, "ragged matrix literal");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = std::conj((*this)(r, c));
    return t;
}

ComplexMatrix ComplexMatrix::column(std::size_t c) const { return columns(c, 1); }

ComplexMatrix ComplexMatrix::columns(std::size_t first, std::size_t count) const {
    ComplexMatrix out(rows_, count);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < count; ++c) out(r, c) = (*this)(r, first + c);
    return out;
}

double ComplexMatrix::max_abs() const noexcept {
    double best = 0.0;
    for (const auto& z : data_) best = std::max(best, std::abs(z));
    return best;
}

double ComplexMatrix::frobenius() const noexcept {
    double sum = 0.0;
    for (const auto& z : data_) sum += std::norm(z);
    return std::sqrt(sum);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw Error(ErrorKind::ValidationError, "matrix shape mismatch in addition");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw Error(ErrorKind::ValidationError, "matrix shape mismatch in subtraction");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw Error(ErrorKind::ValidationError, "matrix shape mismatch in product");
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

ComplexMatrix hconcat(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() == 0) return b;
    if (b.cols() == 0) return a;
    if (a.rows() != b.rows())
        throw Error(ErrorKind::ValidationError, "row mismatch in hconcat");
    ComplexMatrix out(a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
        for (std::size_t c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
    }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorKind::ValidationError, "matrix shape mismatch in comparison");
    double best = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k)
        best = std::max(best, std::abs(a.entries()[k] - b.entries()[k]));
    return best;
}

namespace {

constexpr int kMaxSweeps = 100;

// Unitary G with G* [[a, g], [conj(g), b]] G diagonal (a, b real).
struct Rotation {
    Complex g00, g01, g10, g11;
};

Rotation jacobi_rotation(double a, double b, Complex g) {
    const double r = std::abs(g);
    const Complex phase = g / r;  // e^{i theta}
    const double theta = (b - a) / (2.0 * r);
    double t;
    if (std::abs(theta) > 1e150)
        t = 0.5 / theta;
    else
        t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const Complex conj_phase = std::conj(phase);
    return {c, s, -s * conj_phase, c * conj_phase};
}

void rotate_columns(ComplexMatrix& m, std::size_t p, std::size_t q, const Rotation& g) {
    for (std::size_t k = 0; k < m.rows(); ++k) {
        const Complex mp = m(k, p);
        const Complex mq = m(k, q);
        m(k, p) = mp * g.g00 + mq * g.g10;
        m(k, q) = mp * g.g01 + mq * g.g11;
    }
}

void rotate_rows_adjoint(ComplexMatrix& m, std::size_t p, std::size_t q, const Rotation& g) {
    for (std::size_t k = 0; k < m.cols(); ++k) {
        const Complex mp = m(p, k);
        const Complex mq = m(q, k);
        m(p, k) = std::conj(g.g00) * mp + std::conj(g.g10) * mq;
        m(q, k) = std::conj(g.g01) * mp + std::conj(g.g11) * mq;
    }
}

double off_diagonal_norm(const ComplexMatrix& m) {
    double sum = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j) sum += std::norm(m(i, j));
    return std::sqrt(sum);
}

// Modified Gram-Schmidt, applied twice.
void reorthonormalize(ComplexMatrix& v) {
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j < v.cols(); ++j) {
            for (std::size_t i = 0; i < j; ++i) {
                Complex dot{};
                for (std::size_t r = 0; r < v.rows(); ++r) dot += std::conj(v(r, i)) * v(r, j);
                for (std::size_t r = 0; r < v.rows(); ++r) v(r, j) -= dot * v(r, i);
            }
            double norm = 0.0;
            for (std::size_t r = 0; r < v.rows(); ++r) norm += std::norm(v(r, j));
            norm = std::sqrt(norm);
            for (std::size_t r = 0; r < v.rows(); ++r) v(r, j) /= norm;
        }
    }
}

} // namespace

EigenSystem hermitian_eig(const ComplexMatrix& m, double tol) {
    if (!m.square()) throw Error(ErrorKind::NotHermitian, "eigensolver needs a square matrix");
    const std::size_t n = m.rows();
    const double scale = std::max(1.0, m.max_abs());
    const double asym = max_abs_diff(m, m.adjoint());
    if (asym > tol * scale)
        throw Error(ErrorKind::NotHermitian,
                    "symmetry residual " + std::to_string(asym) + " exceeds tolerance");

    ComplexMatrix a = 0.5 * (m + m.adjoint());
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double threshold = 1e-13 * a.frobenius();

    int sweep = 0;
    while (off_diagonal_norm(a) > threshold) {
        if (++sweep > kMaxSweeps)
            throw Error(ErrorKind::NoConvergence, "Jacobi eigensolver exceeded sweep cap");
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                if (std::abs(apq) == 0.0) continue;
                const auto g = jacobi_rotation(a(p, p).real(), a(q, q).real(), apq);
                rotate_columns(a, p, q, g);
                rotate_rows_adjoint(a, p, q, g);
                rotate_columns(v, p, q, g);
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

std::vector<double> singular_values(const ComplexMatrix& m, ComplexMatrix* left) {
    if (m.empty()) {
        if (left) *left = ComplexMatrix(m.rows(), 0);
        return {};
    }
    if (!left && m.cols() > m.rows()) return singular_values(m.adjoint(), nullptr);

    ComplexMatrix w = m;
    const std::size_t n = w.cols();
    constexpr double eps = 1e-15;
    // pairs whose coupling sits at roundoff level of the whole matrix are left alone
    const double floor = 1e-17 * m.frobenius() * m.frobenius();

    auto col_dot = [&](std::size_t p, std::size_t q) {
        Complex dot{};
        for (std::size_t r = 0; r < w.rows(); ++r) dot += std::conj(w(r, p)) * w(r, q);
        return dot;
    };

    bool rotated = true;
    int sweep = 0;
    while (rotated) {
        if (++sweep > kMaxSweeps)
            throw Error(ErrorKind::NoConvergence, "one-sided Jacobi exceeded sweep cap");
        rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double alpha = col_dot(p, p).real();
                const double beta = col_dot(q, q).real();
                const Complex gamma = col_dot(p, q);
                if (std::abs(gamma) <= eps * std::sqrt(alpha * beta) || std::abs(gamma) <= floor)
                    continue;
                rotated = true;
                rotate_columns(w, p, q, jacobi_rotation(alpha, beta, gamma));
            }
    }

    std::vector<double> sigma(n);
    for (std::size_t c = 0; c < n; ++c) sigma[c] = std::sqrt(col_dot(c, c).real());
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

    std::vector<double> sorted(n);
    for (std::size_t k = 0; k < n; ++k) sorted[k] = sigma[order[k]];
    if (left) {
        *left = ComplexMatrix(w.rows(), n);
        for (std::size_t k = 0; k < n; ++k) {
            const double s = sigma[order[k]];
            if (s == 0.0) continue;
            for (std::size_t r = 0; r < w.rows(); ++r) (*left)(r, k) = w(r, order[k]) / s;
        }
    }
    return sorted;
}

double largest_singular_value(const ComplexMatrix& m) {
    const auto sigma = singular_values(m);
    return sigma.empty() ? 0.0 : sigma.front();
}

ComplexMatrix orthonormal_range(const ComplexMatrix& m, double tol) {
    ComplexMatrix left;
    const auto sigma = singular_values(m, &left);
    if (sigma.empty() || sigma.front() == 0.0) return ComplexMatrix(m.rows(), 0);
    const double cutoff = tol * sigma.front();
    std::size_t rank = 0;
    while (rank < sigma.size() && sigma[rank] > cutoff) ++rank;
    ComplexMatrix basis = left.columns(0, rank);
    reorthonormalize(basis);
    return basis;
}

bool check_orthogonal_projection(const ComplexMatrix& m, double tol) {
    if (!m.square()) return false;
    return max_abs_diff(m, m.adjoint()) <= tol && max_abs_diff(m * m, m) <= tol;
}

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.square() || a.rows() != b.rows())
        throw Error(ErrorKind::ValidationError, "shape mismatch in linear solve");
    const std::size_t n = a.rows();
    ComplexMatrix lu = a;
    ComplexMatrix x = b;
    const double scale = a.max_abs();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::abs(lu(r, k)) > std::abs(lu(pivot, k))) pivot = r;
        if (std::abs(lu(pivot, k)) <= 1e-14 * scale * static_cast<double>(n) || scale == 0.0)
            throw Error(ErrorKind::SingularMatrix, "matrix is numerically singular");
        if (pivot != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(lu(k, c), lu(pivot, c));
            for (std::size_t c = 0; c < x.cols(); ++c) std::swap(x(k, c), x(pivot, c));
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            const Complex f = lu(r, k) / lu(k, k);
            if (f == Complex{}) continue;
            for (std::size_t c = k; c < n; ++c) lu(r, c) -= f * lu(k, c);
            for (std::size_t c = 0; c < x.cols(); ++c) x(r, c) -= f * x(k, c);
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        for (std::size_t c = 0; c < x.cols(); ++c) {
            Complex sum = x(k, c);
            for (std::size_t j = k + 1; j < n; ++j) sum -= lu(k, j) * x(j, c);
            x(k, c) = sum / lu(k, k);
        }
    }
    return x;
}

ComplexMatrix inverse(const ComplexMatrix& a) { return solve(a, ComplexMatrix::identity(a.rows())); }

ComplexMatrix range_projector(const ComplexMatrix& basis) { return basis * basis.adjoint(); }

} // namespace twoproj
