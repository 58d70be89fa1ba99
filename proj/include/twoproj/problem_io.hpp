#pragma once

#include "twoproj/attain.hpp"
#include "twoproj/dense.hpp"
#include "twoproj/halmos.hpp"
#include "twoproj/skew.hpp"
#include "twoproj/spectral.hpp"
#include "twoproj/verify.hpp"

#include <json.hpp>

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace twoproj {

using json = nlohmann::json;

enum class ProblemKind { projection_pair, skew, element, model_family };

const char* to_string(ProblemKind k) noexcept;

/// A validated problem description. Which members are set depends on `kind`:
///   projection_pair: p, q and optionally a (an operator to analyze)
///   skew:            t
///   element:         element
///   model_family:    variant, n_atoms, op
struct ProblemFile {
    ProblemKind kind = ProblemKind::element;
    std::optional<ComplexMatrix> p, q, a, t;
    std::optional<WStarElement> element;
    Example3Variant variant = Example3Variant::one_over_n;
    std::size_t n_atoms = 64;
    TruncatedOperator op = TruncatedOperator::a;
};

/// Errors carry the JSON field path, e.g. "model.atoms[0].value: atom must lie in (0,1)".
ProblemFile parse_problem(const json& doc);
ProblemFile parse_problem_text(std::string_view text);
ProblemFile load_problem(const std::filesystem::path& path);

// field readers, exposed for reuse
ComplexMatrix matrix_from_json(const json& j, const std::string& path);
Complex complex_from_json(const json& j, const std::string& path);
SpectralModel model_from_json(const json& j, const std::string& path);

json to_json(Complex z);
json to_json(const ComplexMatrix& m);
json to_json(const SpectralModel& m);
json to_json(const WStarElement& a);
json to_json(const MaximizerSet& s);
json to_json(const AttainmentVerdict& v);
json to_json(const HalmosDecomposition& d);
json to_json(const SkewAnalysis& s);
json to_json(const TrialReport& r);

/// "limit point 1", "atom 0.2", "plateau [0.3, 0.4]", "essential point 0.5".
std::string describe_sigma(const MaximizerSet& s);

} // namespace twoproj
