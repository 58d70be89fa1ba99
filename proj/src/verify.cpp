#include "twoproj/verify.hpp"

#include "twoproj/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace twoproj {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
}

std::size_t Rng::below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
    ComplexMatrix g(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) g(r, c) = rng.complex_normal();
    // two passes of modified Gram-Schmidt
    for (int pass = 0; pass < 2; ++pass)
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < j; ++i) {
                Complex dot{};
                for (std::size_t r = 0; r < n; ++r) dot += std::conj(g(r, i)) * g(r, j);
                for (std::size_t r = 0; r < n; ++r) g(r, j) -= dot * g(r, i);
            }
            double norm = 0.0;
            for (std::size_t r = 0; r < n; ++r) norm += std::norm(g(r, j));
            norm = std::sqrt(norm);
            for (std::size_t r = 0; r < n; ++r) g(r, j) /= norm;
        }
    return g;
}

HalmosDecomposition random_decomposition(std::size_t n, Rng& rng) {
    if (n < 2) throw Error(ErrorKind::ValidationError, "random pairs need n >= 2");
    const std::size_t min_generic = n >= 4 ? 1 : 0;
    const std::size_t max_generic = n / 2;
    const std::size_t m = min_generic + rng.below(max_generic - min_generic + 1);

    std::array<std::size_t, 4> dims{};
    for (std::size_t k = 0; k < n - 2 * m; ++k) ++dims[rng.below(4)];

    std::vector<double> h;
    while (h.size() < m) {
        const double candidate = rng.uniform(0.02, 0.98);
        if (std::all_of(h.begin(), h.end(), [&](double v) { return std::abs(v - candidate) >= 1e-3; }))
            h.push_back(candidate);
    }
    std::sort(h.begin(), h.end());

    const ComplexMatrix w = random_unitary(n, rng);
    HalmosDecomposition d;
    d.dimension = n;
    std::size_t offset = 0;
    for (int c = 0; c < 4; ++c) {
        d.intersections[c] = w.columns(offset, dims[c]);
        offset += dims[c];
    }
    d.generic_first = w.columns(offset, m);
    d.generic_second = w.columns(offset + m, m);
    d.h_values = std::move(h);
    return d;
}

std::pair<ComplexMatrix, ComplexMatrix> random_projection_pair(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    return reconstruct(random_decomposition(n, rng));
}

namespace {

std::string complex_literal(Complex c) {
    return "(" + format_real(c.real()) + "+" + format_real(c.imag()) + "*i)";
}

} // namespace

ElementSpec random_element_spec(const std::array<bool, 4>& present, Rng& rng) {
    ElementSpec spec;
    for (int k = 0; k < 4; ++k)
        if (present[k]) spec.scalars[k] = rng.complex_normal();
    for (auto& row : spec.symbol)
        for (auto& entry : row) {
            const std::size_t degree = rng.below(3);
            std::string text = complex_literal(rng.complex_normal());
            if (degree >= 1) text += " + " + complex_literal(rng.complex_normal()) + "*x";
            if (degree >= 2) text += " + " + complex_literal(rng.complex_normal()) + "*x^2";
            entry = parse_expression(text);
        }
    return spec;
}

WStarElement element_over(const HalmosDecomposition& d, const ElementSpec& spec) {
    Scalars scalars;
    const auto present = d.present();
    for (int k = 0; k < 4; ++k)
        if (present[k]) {
            if (!spec.scalars[k])
                throw Error(ErrorKind::ModelMismatch,
                            std::string("element spec lacks a_") + to_string(kCorners[k]));
            scalars[k] = spec.scalars[k];
        }
    Symbol symbol;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) symbol[i][j] = spec.symbol[i][j];
    return build_element(std::move(scalars), std::move(symbol), SpectralModel::from_atoms(d.h_values));
}

void TrialReport::merge(const TrialReport& other) {
    trials += other.trials;
    dimension = std::max(dimension, other.dimension);
    max_residual = std::max(max_residual, other.max_residual);
    max_roundtrip_residual = std::max(max_roundtrip_residual, other.max_roundtrip_residual);
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
}

TrialReport crosscheck_norm(const ComplexMatrix& p, const ComplexMatrix& q, const ElementSpec& spec,
                            std::uint64_t seed, double tolerance, std::size_t trial_id) {
    TrialReport report;
    report.seed = seed;
    report.dimension = p.rows();
    report.trials = 1;
    report.tolerance = tolerance;

    const HalmosDecomposition d = decompose(p, q);
    const auto [p2, q2] = reconstruct(d);
    report.max_roundtrip_residual = std::max(max_abs_diff(p, p2), max_abs_diff(q, q2));
    if (report.max_roundtrip_residual > tolerance)
        report.failures.push_back({trial_id, "roundtrip", 0.0, report.max_roundtrip_residual});

    const WStarElement element = element_over(d, spec);
    const ComplexMatrix a = assemble(d, element);
    const double oracle = largest_singular_value(a);
    const double denom = oracle > 0.0 ? oracle : 1.0;

    auto record = [&](const char* quantity, double got) {
        const double residual = std::abs(got - oracle) / denom;
        report.max_residual = std::max(report.max_residual, residual);
        if (!(residual <= tolerance)) report.failures.push_back({trial_id, quantity, oracle, got});
    };
    record("formula_norm", norm(element));
    record("extracted_norm", norm(extract_symbol(d, a)));
    return report;
}

TrialReport random_crosscheck(std::size_t n, std::size_t trials, std::uint64_t seed, double tolerance) {
    TrialReport total;
    total.seed = seed;
    total.dimension = n;
    total.tolerance = tolerance;
    for (std::size_t k = 0; k < trials; ++k) {
        Rng rng(seed + k);
        const HalmosDecomposition truth = random_decomposition(n, rng);
        const auto [p, q] = reconstruct(truth);
        const ElementSpec spec = random_element_spec(truth.present(), rng);
        total.merge(crosscheck_norm(p, q, spec, seed + k, tolerance, k));
    }
    total.trials = trials;
    return total;
}

const char* to_string(TruncatedOperator op) noexcept { return op == TruncatedOperator::t ? "T" : "A"; }

ComplexMatrix example3_block(Example3Variant variant, TruncatedOperator op, std::size_t n) {
    const double w = example3_weight(variant, n);
    const ComplexMatrix t{{1.0, -w}, {0.0, 0.0}};
    if (op == TruncatedOperator::t) return t;
    const ComplexMatrix ts = t.adjoint();
    return t * ts + ts * t - t - ts - ComplexMatrix::identity(2);
}

ComplexMatrix example3_truncation(Example3Variant variant, TruncatedOperator op, std::size_t n) {
    ComplexMatrix out(2 * n, 2 * n);
    for (std::size_t k = 1; k <= n; ++k) {
        const ComplexMatrix b = example3_block(variant, op, k);
        const std::size_t o = 2 * (k - 1);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) out(o + i, o + j) = b(i, j);
    }
    return out;
}

std::vector<double> truncation_norms(Example3Variant variant, TruncatedOperator op,
                                     const std::vector<std::size_t>& dims) {
    if (!std::is_sorted(dims.begin(), dims.end()))
        throw Error(ErrorKind::ValidationError, "truncation dims must be ascending");
    // the norm of a block-diagonal matrix is the largest block norm
    std::vector<double> out;
    double running = 0.0;
    std::size_t done = 0;
    for (std::size_t n : dims) {
        if (n < 1) throw Error(ErrorKind::ValidationError, "truncation dims must be positive");
        for (; done < n; ++done)
            running = std::max(running, largest_singular_value(example3_block(variant, op, done + 1)));
        out.push_back(running);
    }
    return out;
}

} // namespace twoproj
