#include "twoproj/skew.hpp"

#include "twoproj/error.hpp"

#include <algorithm>
#include <cmath>

namespace twoproj {

const char* to_string(Example3Variant v) noexcept {
    return v == Example3Variant::one_over_n ? "one_over_n" : "two_over_n";
}

WStarElement skew_symbol(const SpectralModel& h_model, bool m01_present, bool m10_present) {
    Scalars s;
    if (m01_present) at(s, Corner::m01) = 1.0;
    if (m10_present) at(s, Corner::m10) = 0.0;
    const Expr x = Expr::variable();
    Symbol sym;
    sym[0][0] = Expr::constant(1.0);
    sym[0][1] = -sqrt(Expr::constant(1.0) / x - Expr::constant(1.0));
    sym[1][0] = Expr::constant(0.0);
    sym[1][1] = Expr::constant(0.0);
    return build_element(std::move(s), std::move(sym), h_model);
}

namespace {

// Eigenvalues closer than this are one atom of H.
constexpr double kAtomMerge = 1e-9;

} // namespace

SkewAnalysis analyze_skew(const ComplexMatrix& t, const SkewOptions& opt) {
    if (!t.square()) throw Error(ErrorKind::NotIdempotent, "T must be square");
    const std::size_t n = t.rows();
    const double t_norm = largest_singular_value(t);
    const double idem = max_abs_diff(t * t, t);
    if (idem > opt.tol * std::max(t_norm, 1.0))
        throw Error(ErrorKind::NotIdempotent, "T^2 - T has max entry " + format_real(idem));
    if (t_norm <= 1.0 + opt.tol)
        throw Error(ErrorKind::NotSkew, "||T|| = " + format_real(t_norm) + " <= 1: T is not genuinely skew");

    const ComplexMatrix ident = ComplexMatrix::identity(n);
    const ComplexMatrix ran_t = orthonormal_range(t, opt.tol);
    const ComplexMatrix ker_t = orthonormal_range(ident - t, opt.tol);
    const ComplexMatrix p = range_projector(ran_t);
    const ComplexMatrix q = range_projector(ker_t);
    const ComplexMatrix pq = p * q;
    const double pq_norm = largest_singular_value(pq);
    if (pq_norm >= 1.0)
        throw Error(ErrorKind::AfriatViolation, "||PQ|| = " + format_real(pq_norm) + " is not below 1");

    double afriat = 0.0;
    try {
        const ComplexMatrix lhs = ident - pq;
        afriat = largest_singular_value(t - solve(lhs, p * lhs));
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::SingularMatrix) throw;
        throw Error(ErrorKind::AfriatViolation, "I - PQ is numerically singular");
    }
    if (afriat > 10.0 * opt.tol * t_norm)
        throw Error(ErrorKind::AfriatViolation, "Afriat residual " + format_real(afriat) + " too large");

    // H = (I - PQP) restricted to Ran P
    const auto eig = hermitian_eig(ComplexMatrix::identity(ran_t.cols()) - ran_t.adjoint() * q * ran_t,
                                   std::max(opt.tol, 1e-12));
    std::size_t dim_m01 = 0;
    std::vector<double> h;
    for (double v : eig.values) {
        if (v >= 1.0 - opt.boundary_eps)
            ++dim_m01;
        else if (v <= opt.boundary_eps)
            throw Error(ErrorKind::AfriatViolation, "H has an eigenvalue at 0; ||PQ|| would be 1");
        else
            h.push_back(v);
    }
    std::sort(h.begin(), h.end());
    if (dim_m01 + 2 * h.size() > n)
        throw Error(ErrorKind::AfriatViolation, "subspace dimensions exceed the space");
    const std::size_t dim_m10 = n - dim_m01 - 2 * h.size();

    std::vector<double> distinct;
    for (double v : h)
        if (distinct.empty() || v - distinct.back() > kAtomMerge) distinct.push_back(v);
    SpectralModel model = SpectralModel::from_atoms(distinct);
    WStarElement symbol = skew_symbol(model, dim_m01 > 0, dim_m10 > 0);

    return SkewAnalysis{t,      p,       q,       t_norm, pq_norm, afriat, dim_m01,
                        dim_m10, std::move(h), std::move(model), std::move(symbol)};
}

AttainmentVerdict attains_norm(const SkewAnalysis& analysis, const SearchOptions& options) {
    return decide_attainment(analysis.t_symbol, options);
}

AttainmentVerdict attains_norm(const SpectralModel& h_model, const SearchOptions& options) {
    return decide_attainment(skew_symbol(h_model), options);
}

WStarElement linear_family(const WStarElement& t_symbol, double alpha, double beta) {
    std::array<bool, 4> present{};
    for (int k = 0; k < 4; ++k) present[k] = t_symbol.scalars()[k].has_value();
    const WStarElement ident = identity_element(t_symbol.model(), present);
    return add(add(t_symbol, scale(alpha, adjoint(t_symbol))), scale(beta, ident));
}

WStarElement linear_family(const SpectralModel& h_model, double alpha, double beta) {
    return linear_family(skew_symbol(h_model), alpha, beta);
}

WStarElement alternating_power(const WStarElement& t_symbol, int m) {
    if (m < 1) throw Error(ErrorKind::ValidationError, "alternating power needs m >= 1");
    const WStarElement t_adj = adjoint(t_symbol);
    WStarElement acc = t_symbol;
    for (int k = 1; k < m; ++k) acc = multiply(acc, k % 2 == 1 ? t_adj : t_symbol);
    return acc;
}

WStarElement alternating_power(const SpectralModel& h_model, int m) {
    return alternating_power(skew_symbol(h_model), m);
}

double example3_weight(Example3Variant variant, std::size_t n) {
    const double numerator = variant == Example3Variant::one_over_n ? 1.0 : 2.0;
    return numerator / static_cast<double>(n);
}

Example3 example3_model(Example3Variant variant, std::size_t n_atoms) {
    if (n_atoms < 1) throw Error(ErrorKind::ValidationError, "example 3 needs at least one atom");
    const double c = variant == Example3Variant::one_over_n ? 1.0 : 4.0;
    SpectralModel model;
    for (std::size_t n = 1; n <= n_atoms; ++n) {
        const double nn = static_cast<double>(n) * static_cast<double>(n);
        model.atoms.push_back({nn / (nn + c), "x" + std::to_string(n)});
    }
    model.limit_points.push_back(1.0);

    WStarElement t = skew_symbol(model);
    const WStarElement t_adj = adjoint(t);
    const WStarElement ident = identity_element(model, {});
    WStarElement a = add(multiply(t, t_adj), multiply(t_adj, t));
    a = add(a, scale(-1.0, add(add(t, t_adj), ident)));
    return Example3{variant, std::move(model), std::move(t), std::move(a)};
}

} // namespace twoproj
