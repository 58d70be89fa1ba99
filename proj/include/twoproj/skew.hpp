#pragma once

#include "twoproj/attain.hpp"
#include "twoproj/dense.hpp"
#include "twoproj/spectral.hpp"

#include <cstddef>
#include <vector>

namespace twoproj {

struct SkewOptions {
    double tol = 1e-10;
    /// Eigenvalues of (I - PQP)|Ran P this close to 1 belong to M_01.
    double boundary_eps = 1e-8;
};

/// A skew projection T together with P = P_{Ran T}, Q = P_{Ker T} and the operator H.
struct SkewAnalysis {
    ComplexMatrix t;
    ComplexMatrix p;
    ComplexMatrix q;
    double t_norm = 0.0;
    double pq_norm = 0.0;          // ||PQ||, always < 1
    double afriat_residual = 0.0;  // ||T - (I-PQ)^{-1} P (I-PQ)||
    std::size_t dim_m01 = 0;
    std::size_t dim_m10 = 0;
    std::vector<double> h_eigenvalues;  // generic part, ascending, with multiplicity
    SpectralModel h_model;              // distinct h values as atoms
    WStarElement t_symbol;
};

SkewAnalysis analyze_skew(const ComplexMatrix& t, const SkewOptions& options = {});

/// Symbol of a skew projection: (1, 0) on M_01, M_10 and [[1, -sqrt(1/x - 1)], [0, 0]].
WStarElement skew_symbol(const SpectralModel& h_model, bool m01_present = false, bool m10_present = false);

/// A skew projection attains its norm iff min sigma(H) is an eigenvalue of H.
AttainmentVerdict attains_norm(const SkewAnalysis& analysis, const SearchOptions& options = {});
AttainmentVerdict attains_norm(const SpectralModel& h_model, const SearchOptions& options = {});

/// T + alpha T* + beta I, built through adjoint/add/scale.
WStarElement linear_family(const WStarElement& t_symbol, double alpha, double beta);
WStarElement linear_family(const SpectralModel& h_model, double alpha, double beta);

/// T T* T T* ... with m factors.
WStarElement alternating_power(const WStarElement& t_symbol, int m);
WStarElement alternating_power(const SpectralModel& h_model, int m);

enum class Example3Variant { one_over_n, two_over_n };

const char* to_string(Example3Variant v) noexcept;

/// T = diag([[1, -w_n], [0, 0]]) on l^2 with w_n = 1/n or 2/n, truncated to n_atoms
/// eigenvalues x_n = 1/(1 + w_n^2) of H plus the limit point 1.
struct Example3 {
    Example3Variant variant;
    SpectralModel h_model;
    WStarElement t_symbol;
    WStarElement element;  // T T* + T* T - T - T* - I
};

Example3 example3_model(Example3Variant variant, std::size_t n_atoms = 64);

/// w_n of the Example-3 family, n >= 1.
double example3_weight(Example3Variant variant, std::size_t n);

} // namespace twoproj
