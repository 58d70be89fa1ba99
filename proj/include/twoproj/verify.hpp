#pragma once

#include "twoproj/dense.hpp"
#include "twoproj/halmos.hpp"
#include "twoproj/skew.hpp"
#include "twoproj/spectral.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace twoproj {

/// Seedable source for reproducible trials.
///
/// Bits come from std::mt19937_64 (the standard 64-bit Mersenne Twister, whose
/// output sequence is fixed by the C++ standard). Uniform doubles take the top
/// 53 bits: u = (bits >> 11) * 2^-53. Normals use Box-Muller on two uniforms,
/// returning the cosine branch only. No std distributions are used, since their
/// output is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }
    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);   // [lo, hi)
    double normal();
    Complex complex_normal();               // independent N(0,1) parts
    std::size_t below(std::size_t n);       // [0, n)

private:
    std::mt19937_64 engine_;
};

/// Haar-like unitary from Gram-Schmidt on a complex Gaussian matrix.
ComplexMatrix random_unitary(std::size_t n, Rng& rng);

/// Decomposition with random subspace sizes and distinct h values in [0.02, 0.98]
/// (gap >= 1e-3), expressed in a random orthonormal basis. The generic part is
/// nonempty when n >= 4.
HalmosDecomposition random_decomposition(std::size_t n, Rng& rng);

/// Deterministic in (n, seed); n >= 2.
std::pair<ComplexMatrix, ComplexMatrix> random_projection_pair(std::size_t n, std::uint64_t seed);

/// Scalars for the present subspaces plus four symbol expressions.
struct ElementSpec {
    Scalars scalars;
    std::array<std::array<Expr, 2>, 2> symbol;
};

/// Random complex scalars and symbol entries c0 + c1 x + c2 x^2 of random degree <= 2,
/// generated as text in the wire grammar and parsed.
ElementSpec random_element_spec(const std::array<bool, 4>& present, Rng& rng);

/// The element over the atoms {h_k} of a decomposition.
WStarElement element_over(const HalmosDecomposition& d, const ElementSpec& spec);

struct TrialFailure {
    std::size_t trial = 0;
    std::string quantity;
    double expected = 0.0;
    double got = 0.0;
};

struct TrialReport {
    std::uint64_t seed = 0;
    std::size_t dimension = 0;
    std::size_t trials = 0;
    double tolerance = 1e-9;
    double max_residual = 0.0;            // relative norm residuals
    double max_roundtrip_residual = 0.0;  // decompose -> reconstruct, entrywise
    std::vector<TrialFailure> failures;

    bool passed() const noexcept { return failures.empty(); }
    void merge(const TrialReport& other);
};

/// Norm formula (for the specified element and for the symbol extracted back from
/// its matrix) against the largest singular value of the assembled matrix.
TrialReport crosscheck_norm(const ComplexMatrix& p, const ComplexMatrix& q, const ElementSpec& spec,
                            std::uint64_t seed, double tolerance = 1e-9, std::size_t trial_id = 0);

/// `trials` random pairs of size n with random elements; trial k uses seed + k.
TrialReport random_crosscheck(std::size_t n, std::size_t trials, std::uint64_t seed,
                              double tolerance = 1e-9);

enum class TruncatedOperator { t, a };  // T itself, or T T* + T* T - T - T* - I

const char* to_string(TruncatedOperator op) noexcept;

/// 2x2 block n of the Example-3 operator, from the infinite-matrix definition.
ComplexMatrix example3_block(Example3Variant variant, TruncatedOperator op, std::size_t n);

/// Dense 2N x 2N leading truncation.
ComplexMatrix example3_truncation(Example3Variant variant, TruncatedOperator op, std::size_t n);

/// Largest singular value of each leading truncation, dims ascending.
std::vector<double> truncation_norms(Example3Variant variant, TruncatedOperator op,
                                     const std::vector<std::size_t>& dims);

} // namespace twoproj
