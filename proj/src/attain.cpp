#include "twoproj/attain.hpp"

#include "twoproj/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace twoproj {

const char* to_string(PointKind k) noexcept {
    switch (k) {
    case PointKind::atom: return "atom";
    case PointKind::essential_interior: return "essential_interior";
    case PointKind::limit_point: return "limit_point";
    case PointKind::interval_plateau: return "interval_plateau";
    }
    return "?";
}

const char* to_string(Clause c) noexcept {
    switch (c) {
    case Clause::scalar_dominates: return "scalar_dominates";
    case Clause::sigma_has_mass: return "sigma_has_mass";
    case Clause::sigma_null: return "sigma_null";
    }
    return "?";
}

namespace {

constexpr std::size_t kRefinedPerInterval = 8;

std::vector<double> sample_points(const Interval& iv, std::size_t grid) {
    if (iv.lo == iv.hi) return {iv.lo};
    const std::size_t n = std::max<std::size_t>(grid, 2);
    std::vector<double> xs(n);
    for (std::size_t k = 0; k < n; ++k)
        xs[k] = iv.lo + (iv.hi - iv.lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    xs.back() = iv.hi;
    return xs;
}

double half_psi(const WStarElement& a, double x) { return 0.5 * symbol_at(a, x).psi; }

struct Candidate {
    double x;
    double value;
};

struct IntervalScan {
    const Interval* interval;
    std::vector<double> xs;
    std::vector<double> fs;
    std::vector<Candidate> refined;
};

IntervalScan scan_interval(const WStarElement& a, const Interval& iv, const SearchOptions& opt) {
    IntervalScan scan{&iv, sample_points(iv, opt.grid), {}, {}};
    scan.fs.reserve(scan.xs.size());
    for (double x : scan.xs) scan.fs.push_back(half_psi(a, x));

    const std::size_t n = scan.xs.size();
    std::vector<std::size_t> peaks;
    for (std::size_t k = 0; k < n; ++k) {
        const bool left_ok = k == 0 || scan.fs[k] >= scan.fs[k - 1];
        const bool right_ok = k + 1 == n || scan.fs[k] >= scan.fs[k + 1];
        if (left_ok && right_ok) peaks.push_back(k);
    }
    std::stable_sort(peaks.begin(), peaks.end(),
                     [&](std::size_t i, std::size_t j) { return scan.fs[i] > scan.fs[j]; });
    if (peaks.size() > kRefinedPerInterval) peaks.resize(kRefinedPerInterval);

    for (std::size_t k : peaks) {
        if (n == 1) break;
        double lo = scan.xs[k == 0 ? 0 : k - 1];
        double hi = scan.xs[k + 1 == n ? n - 1 : k + 1];
        Candidate best{scan.xs[k], scan.fs[k]};
        for (std::size_t round = 0; round < opt.refine; ++round) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            const double f1 = half_psi(a, m1);
            const double f2 = half_psi(a, m2);
            if (f1 > best.value) best = {m1, f1};
            if (f2 > best.value) best = {m2, f2};
            if (f1 < f2)
                lo = m1;
            else
                hi = m2;
        }
        scan.refined.push_back(best);
    }
    return scan;
}

enum class Mass { positive, none, indeterminate };

// Spectral measure of {x in sigma(H) : pred(x)}: atoms carry mass, limit points do not,
// and an interval contributes when two consecutive grid samples satisfy pred.
template <class Pred>
Mass set_mass(const SpectralModel& model, const SearchOptions& opt, Pred&& pred) {
    for (const auto& atom : model.atoms)
        if (pred(atom.value)) return Mass::positive;
    bool indeterminate = false;
    for (const auto& iv : model.intervals) {
        const auto xs = sample_points(iv, opt.grid);
        bool previous = false;
        bool run = false;
        for (double x : xs) {
            const bool now = pred(x);
            if (now && previous) run = true;
            previous = now;
        }
        if (!run) continue;
        if (iv.measure == MeasureClass::absolutely_continuous) return Mass::positive;
        indeterminate = true;
    }
    return indeterminate ? Mass::indeterminate : Mass::none;
}

} // namespace

MaximizerSet lambda_max(const WStarElement& a, const SearchOptions& opt) {
    const SpectralModel& model = a.model();
    if (model.empty()) throw Error(ErrorKind::EmptyModel, "lambda_max needs a nonempty spectral model");

    double value = -std::numeric_limits<double>::infinity();
    std::vector<double> atom_values;
    for (const auto& atom : model.atoms) {
        atom_values.push_back(half_psi(a, atom.value));
        value = std::max(value, atom_values.back());
    }
    std::vector<double> limit_values;
    for (double p : model.limit_points) {
        limit_values.push_back(half_psi(a, p));
        value = std::max(value, limit_values.back());
    }
    std::vector<IntervalScan> scans;
    for (const auto& iv : model.intervals) {
        scans.push_back(scan_interval(a, iv, opt));
        for (double f : scans.back().fs) value = std::max(value, f);
        for (const auto& c : scans.back().refined) value = std::max(value, c.value);
    }

    MaximizerSet out;
    out.value = value;
    const double floor = value - plateau_tolerance(value);

    for (std::size_t k = 0; k < model.atoms.size(); ++k)
        if (atom_values[k] >= floor) {
            const double x = model.atoms[k].value;
            out.points.push_back({x, PointKind::atom, x, x, MeasureClass::unspecified});
        }
    for (std::size_t k = 0; k < model.limit_points.size(); ++k)
        if (limit_values[k] >= floor) {
            const double x = model.limit_points[k];
            out.points.push_back({x, PointKind::limit_point, x, x, MeasureClass::unspecified});
        }

    for (const auto& scan : scans) {
        const std::size_t n = scan.xs.size();
        const MeasureClass measure = scan.interval->measure;
        struct Run {
            std::size_t first, last;
            double x, best;
        };
        std::vector<Run> runs;
        for (std::size_t k = 0; k < n; ++k) {
            if (scan.fs[k] < floor) continue;
            if (!runs.empty() && runs.back().last + 1 == k) {
                runs.back().last = k;
            } else {
                runs.push_back({k, k, scan.xs[k], scan.fs[k]});
            }
        }
        std::vector<Candidate> loose;
        for (const auto& c : scan.refined) {
            if (c.value < floor) continue;
            bool merged = false;
            for (auto& run : runs) {
                const double lo = scan.xs[run.first == 0 ? 0 : run.first - 1];
                const double hi = scan.xs[run.last + 1 == n ? n - 1 : run.last + 1];
                if (c.x >= lo && c.x <= hi) {
                    if (run.first == run.last && c.value > run.best) {
                        run.x = c.x;
                        run.best = c.value;
                    }
                    merged = true;
                    break;
                }
            }
            if (!merged &&
                std::none_of(loose.begin(), loose.end(), [&](const Candidate& o) { return o.x == c.x; }))
                loose.push_back(c);
        }
        for (const auto& run : runs) {
            if (run.last > run.first) {
                const double lo = scan.xs[run.first];
                const double hi = scan.xs[run.last];
                out.points.push_back({0.5 * (lo + hi), PointKind::interval_plateau, lo, hi, measure});
            } else {
                out.points.push_back({run.x, PointKind::essential_interior, run.x, run.x, measure});
            }
        }
        for (const auto& c : loose)
            out.points.push_back({c.x, PointKind::essential_interior, c.x, c.x, measure});
    }

    std::stable_sort(out.points.begin(), out.points.end(),
                     [](const MaximizerPoint& p, const MaximizerPoint& q) { return p.x < q.x; });
    return out;
}

AttainmentVerdict decide_attainment(const WStarElement& a, const SearchOptions& opt) {
    AttainmentVerdict v;
    const auto scalar = a.max_scalar_modulus();
    if (!a.has_generic_part()) {
        if (!scalar)
            throw Error(ErrorKind::ValidationError,
                        "element acts on the zero space: no present subspace and empty model");
        v.norm = *scalar;
        v.attained = true;
        v.clause = Clause::scalar_dominates;
        return v;
    }

    v.sigma = lambda_max(a, opt);
    v.lambda_max = v.sigma.value;
    const double generic = std::sqrt(std::max(v.lambda_max, 0.0));

    if (scalar && *scalar >= generic) {
        v.norm = *scalar;
        v.attained = true;
        v.clause = Clause::scalar_dominates;
        return v;
    }
    v.norm = generic;

    bool indeterminate = false;
    for (const auto& p : v.sigma.points) {
        if (p.kind == PointKind::atom ||
            (p.kind == PointKind::interval_plateau && p.measure == MeasureClass::absolutely_continuous)) {
            v.attained = true;
            v.clause = Clause::sigma_has_mass;
            return v;
        }
        if (p.kind == PointKind::interval_plateau) indeterminate = true;
    }
    if (indeterminate)
        throw Error(ErrorKind::IndeterminateMeasure,
                    "the maximizer set is a plateau inside an interval of unspecified measure class");
    v.attained = false;
    v.clause = Clause::sigma_null;
    return v;
}

bool kernel_nontrivial(const WStarElement& a, const SearchOptions& opt) {
    if (!a.has_generic_part()) return false;
    const Mass mass = set_mass(a.model(), opt, [&](double x) {
        const SymbolSample s = symbol_at(a, x);
        return std::abs(s.omega) <= 1e-11 * (1.0 + s.phi);
    });
    if (mass == Mass::indeterminate)
        throw Error(ErrorKind::IndeterminateMeasure,
                    "the zero set of omega is a plateau inside an interval of unspecified measure class");
    return mass == Mass::positive;
}

EigenvalueTest is_eigenvalue(const WStarElement& a, Complex lambda, const SearchOptions& opt) {
    EigenvalueTest out;
    for (const auto& s : a.scalars())
        if (s && std::abs(*s - lambda) <= 1e-11 * (1.0 + std::abs(lambda))) out.from_scalars = true;

    if (a.has_generic_part()) {
        const Mass mass = set_mass(a.model(), opt, [&](double x) {
            const Matrix2 m = a.symbol_matrix(x);
            const Complex trace = m[0][0] + m[1][1];
            const Complex det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            const Complex q = lambda * lambda - trace * lambda + det;
            const double scale =
                1.0 + std::norm(lambda) + std::abs(trace) * std::abs(lambda) + std::abs(det);
            return std::abs(q) <= 1e-11 * scale;
        });
        if (mass == Mass::indeterminate)
            throw Error(ErrorKind::IndeterminateMeasure,
                        "the root set is a plateau inside an interval of unspecified measure class");
        out.from_symbol = mass == Mass::positive;
    }
    out.eigenvalue = out.from_symbol || out.from_scalars;
    return out;
}

} // namespace twoproj
