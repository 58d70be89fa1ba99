#include "twoproj/halmos.hpp"

#include "twoproj/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace twoproj {

std::array<bool, 4> HalmosDecomposition::present() const noexcept {
    std::array<bool, 4> out{};
    for (int k = 0; k < 4; ++k) out[k] = intersections[k].cols() > 0;
    return out;
}

ComplexMatrix HalmosDecomposition::basis() const {
    ComplexMatrix w(dimension, 0);
    for (const auto& block : intersections) w = hconcat(w, block);
    w = hconcat(w, generic_first);
    return hconcat(w, generic_second);
}

namespace {

void append_column(ComplexMatrix& family, const ComplexMatrix& column) {
    family = hconcat(family, column);
}

ComplexMatrix column_of(const ComplexMatrix& basis, const ComplexMatrix& coords, std::size_t k) {
    return basis * coords.column(k);
}

double column_norm(const ComplexMatrix& v) { return v.frobenius(); }

// Eigenvectors of a projection with eigenvalue above (or below) one half.
// A rank cutoff relative to the largest singular value misreads I - P when P = I.
ComplexMatrix projection_part(const ComplexMatrix& p, bool upper) {
    const EigenSystem es = hermitian_eig(p);
    ComplexMatrix out(p.rows(), 0);
    for (std::size_t k = 0; k < es.values.size(); ++k)
        if ((es.values[k] > 0.5) == upper) append_column(out, es.vectors.column(k));
    return out;
}

} // namespace

HalmosDecomposition decompose(const ComplexMatrix& p, const ComplexMatrix& q, const HalmosOptions& opt) {
    if (!p.square() || !q.square() || p.rows() != q.rows())
        throw Error(ErrorKind::NotProjection, "P and Q must be square matrices of equal size");
    if (!check_orthogonal_projection(p, opt.tol))
        throw Error(ErrorKind::NotProjection, "P is not an orthogonal projection within tolerance");
    if (!check_orthogonal_projection(q, opt.tol))
        throw Error(ErrorKind::NotProjection, "Q is not an orthogonal projection within tolerance");

    const std::size_t n = p.rows();
    const double eps = opt.boundary_eps;
    HalmosDecomposition d;
    d.dimension = n;
    for (auto& block : d.intersections) block = ComplexMatrix(n, 0);
    d.generic_first = ComplexMatrix(n, 0);
    d.generic_second = ComplexMatrix(n, 0);

    const ComplexMatrix ident = ComplexMatrix::identity(n);
    const ComplexMatrix ran_p = projection_part(p, true);
    const ComplexMatrix ker_p = projection_part(p, false);
    if (ran_p.cols() + ker_p.cols() != n)
        throw Error(ErrorKind::PairingFailure, "Ran P and Ker P do not span the space");

    // PQP restricted to Ran P
    const auto upper = hermitian_eig(ran_p.adjoint() * q * ran_p, std::max(opt.tol, 1e-12));
    struct Generic {
        double h;
        ComplexMatrix e, f;
    };
    std::vector<Generic> generic;
    const ComplexMatrix complement = ident - p;
    for (std::size_t k = 0; k < upper.values.size(); ++k) {
        const double mu = upper.values[k];
        const ComplexMatrix e = column_of(ran_p, upper.vectors, k);
        if (mu >= 1.0 - eps) {
            append_column(d.intersections[static_cast<int>(Corner::m00)], e);
        } else if (mu <= eps) {
            append_column(d.intersections[static_cast<int>(Corner::m01)], e);
        } else {
            const double h = 1.0 - mu;
            const ComplexMatrix f = (1.0 / std::sqrt(h * (1.0 - h))) * (complement * (q * e));
            const double deviation = std::abs(column_norm(f) - 1.0);
            if (deviation > 10.0 * opt.tol)
                throw Error(ErrorKind::PairingFailure,
                            "paired vector norm deviates from 1 by " + format_real(deviation));
            generic.push_back({h, e, f});
        }
    }

    // (I-P)Q(I-P) restricted to Ker P
    const auto lower = hermitian_eig(ker_p.adjoint() * q * ker_p, std::max(opt.tol, 1e-12));
    std::size_t interior = 0;
    for (std::size_t k = 0; k < lower.values.size(); ++k) {
        const double nu = lower.values[k];
        if (nu >= 1.0 - eps)
            append_column(d.intersections[static_cast<int>(Corner::m10)], column_of(ker_p, lower.vectors, k));
        else if (nu <= eps)
            append_column(d.intersections[static_cast<int>(Corner::m11)], column_of(ker_p, lower.vectors, k));
        else
            ++interior;
    }
    if (interior != generic.size())
        throw Error(ErrorKind::PairingFailure,
                    "generic parts of Ran P and Ker P have different dimensions (" +
                        std::to_string(generic.size()) + " vs " + std::to_string(interior) + ")");

    std::stable_sort(generic.begin(), generic.end(),
                     [](const Generic& a, const Generic& b) { return a.h < b.h; });
    for (const auto& g : generic) {
        d.h_values.push_back(g.h);
        append_column(d.generic_first, g.e);
        append_column(d.generic_second, g.f);
    }

    std::size_t total = 2 * generic.size();
    for (const auto& block : d.intersections) total += block.cols();
    if (total != n) throw Error(ErrorKind::PairingFailure, "subspace dimensions do not add up");
    return d;
}

std::pair<ComplexMatrix, ComplexMatrix> reconstruct(const HalmosDecomposition& d) {
    const std::size_t n = d.dimension;
    ComplexMatrix pb(n, n);
    ComplexMatrix qb(n, n);
    std::size_t offset = 0;
    constexpr std::array<double, 4> p_diag{1, 1, 0, 0};
    constexpr std::array<double, 4> q_diag{1, 0, 1, 0};
    for (int c = 0; c < 4; ++c) {
        for (std::size_t k = 0; k < d.intersections[c].cols(); ++k, ++offset) {
            pb(offset, offset) = p_diag[c];
            qb(offset, offset) = q_diag[c];
        }
    }
    const std::size_t m = d.generic_dimension();
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t i = offset + k;
        const std::size_t j = offset + m + k;
        const double h = d.h_values[k];
        const double coupling = std::sqrt(h * (1.0 - h));
        pb(i, i) = 1.0;
        qb(i, i) = 1.0 - h;
        qb(i, j) = coupling;
        qb(j, i) = coupling;
        qb(j, j) = h;
    }
    const ComplexMatrix w = d.basis();
    const ComplexMatrix wt = w.adjoint();
    return {w * pb * wt, w * qb * wt};
}

namespace {

double nearest_atom(const SpectralModel& model, double h) {
    double best = 0.0;
    double gap = std::numeric_limits<double>::infinity();
    for (const auto& atom : model.atoms)
        if (std::abs(atom.value - h) < gap) {
            gap = std::abs(atom.value - h);
            best = atom.value;
        }
    if (gap > 1e-9)
        throw Error(ErrorKind::ModelMismatch,
                    "no atom of the element's model matches h = " + format_real(h));
    return best;
}

} // namespace

ComplexMatrix assemble(const HalmosDecomposition& d, const WStarElement& a) {
    const auto present = d.present();
    for (Corner c : kCorners) {
        const bool has = at(a.scalars(), c).has_value();
        if (has != present[static_cast<int>(c)])
            throw Error(ErrorKind::ModelMismatch,
                        std::string("scalar a_") + to_string(c) + (has ? " given for an absent" : " missing for a present") +
                            " subspace");
    }
    const std::size_t m = d.generic_dimension();
    if ((m > 0) != a.has_generic_part())
        throw Error(ErrorKind::ModelMismatch, "generic part of the element and of the pair disagree");

    const std::size_t n = d.dimension;
    ComplexMatrix block(n, n);
    std::size_t offset = 0;
    for (int c = 0; c < 4; ++c)
        for (std::size_t k = 0; k < d.intersections[c].cols(); ++k, ++offset)
            block(offset, offset) = *a.scalars()[c];
    for (std::size_t k = 0; k < m; ++k) {
        const Matrix2 phi = a.symbol_matrix(nearest_atom(a.model(), d.h_values[k]));
        const std::size_t i = offset + k;
        const std::size_t j = offset + m + k;
        block(i, i) = phi[0][0];
        block(i, j) = phi[0][1];
        block(j, i) = phi[1][0];
        block(j, j) = phi[1][1];
    }
    const ComplexMatrix w = d.basis();
    return w * block * w.adjoint();
}

WStarElement extract_symbol(const HalmosDecomposition& d, const ComplexMatrix& a, double tol) {
    if (a.rows() != d.dimension || a.cols() != d.dimension)
        throw Error(ErrorKind::NotInAlgebra, "operator size does not match the decomposition");
    for (std::size_t k = 1; k < d.h_values.size(); ++k)
        if (d.h_values[k] - d.h_values[k - 1] <= tol)
            throw Error(ErrorKind::DegenerateSpectrum,
                        "h values collide near " + format_real(d.h_values[k]) +
                            "; multiple h-eigenvalues are not supported");

    const double scale = std::max(a.max_abs(), std::numeric_limits<double>::min());
    Scalars scalars;
    for (Corner c : kCorners) {
        const ComplexMatrix& u = d.subspace(c);
        if (u.cols() == 0) continue;
        const ComplexMatrix b = u.adjoint() * a * u;
        Complex trace{};
        for (std::size_t k = 0; k < b.rows(); ++k) trace += b(k, k);
        const Complex value = trace / static_cast<double>(b.rows());
        const ComplexMatrix expected = value * ComplexMatrix::identity(b.rows());
        if (max_abs_diff(b, expected) > tol * scale)
            throw Error(ErrorKind::NotInAlgebra,
                        std::string("operator does not act as a scalar on M_") + to_string(c));
        at(scalars, c) = value;
    }

    Symbol symbol;
    std::array<std::array<SymbolEntry::Table, 2>, 2> tables;
    for (std::size_t k = 0; k < d.h_values.size(); ++k) {
        const ComplexMatrix u = d.generic_first.column(k);
        const ComplexMatrix v = d.generic_second.column(k);
        const ComplexMatrix au = a * u;
        const ComplexMatrix av = a * v;
        const double h = d.h_values[k];
        tables[0][0].emplace_back(h, (u.adjoint() * au)(0, 0));
        tables[0][1].emplace_back(h, (u.adjoint() * av)(0, 0));
        tables[1][0].emplace_back(h, (v.adjoint() * au)(0, 0));
        tables[1][1].emplace_back(h, (v.adjoint() * av)(0, 0));
    }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) symbol[i][j] = SymbolEntry::table(std::move(tables[i][j]));

    WStarElement element =
        build_element(std::move(scalars), std::move(symbol), SpectralModel::from_atoms(d.h_values));
    const double residual = max_abs_diff(a, assemble(d, element));
    if (residual > tol * scale)
        throw Error(ErrorKind::NotInAlgebra,
                    "operator is not in W*(P,Q): residual " + format_real(residual));
    return element;
}

} // namespace twoproj
