#pragma once

#include "twoproj/spectral.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace twoproj {

struct SearchOptions {
    std::size_t grid = 4096;   // initial samples per interval
    std::size_t refine = 40;   // trisection rounds around each refined local maximum
};

enum class PointKind { atom, essential_interior, limit_point, interval_plateau };

const char* to_string(PointKind k) noexcept;

struct MaximizerPoint {
    double x = 0.0;
    PointKind kind = PointKind::atom;
    // Extent and measure class of the owning interval piece; lo == hi == x for
    // atoms and limit points.
    double lo = 0.0;
    double hi = 0.0;
    MeasureClass measure = MeasureClass::unspecified;
};

/// lambda_max = max over sigma(H) of psi/2, and the points Sigma(A) where it is reached.
struct MaximizerSet {
    double value = 0.0;
    std::vector<MaximizerPoint> points;  // ascending x
};

/// Plateau tolerance applied to psi/2.
inline double plateau_tolerance(double value) { return 1e-9 * (1.0 + std::abs(value)); }

MaximizerSet lambda_max(const WStarElement& a, const SearchOptions& options = {});

enum class Clause { scalar_dominates, sigma_has_mass, sigma_null };

const char* to_string(Clause c) noexcept;

struct AttainmentVerdict {
    double norm = 0.0;
    double lambda_max = 0.0;
    MaximizerSet sigma;
    bool attained = false;
    Clause clause = Clause::sigma_null;
};

/// Norm attainment: either a scalar block dominates, or Sigma(A) carries spectral mass.
/// Throws IndeterminateMeasure when the answer hinges on a plateau inside an
/// interval of unspecified measure class.
AttainmentVerdict decide_attainment(const WStarElement& a, const SearchOptions& options = {});

/// Whether {x : omega(x) = 0} has nonzero spectral measure. Scalars are ignored.
bool kernel_nontrivial(const WStarElement& a, const SearchOptions& options = {});

struct EigenvalueTest {
    bool eigenvalue = false;
    bool from_symbol = false;   // lambda solves the symbol's characteristic equation on a set of mass
    bool from_scalars = false;  // lambda equals some a_ij
};

EigenvalueTest is_eigenvalue(const WStarElement& a, Complex lambda, const SearchOptions& options = {});

} // namespace twoproj
