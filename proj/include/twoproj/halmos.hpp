#pragma once

#include "twoproj/dense.hpp"
#include "twoproj/spectral.hpp"

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

namespace twoproj {

struct HalmosOptions {
    double tol = 1e-10;
    /// Eigenvalues of PQP on Ran P this close to 0 or 1 go to M_01 / M_00.
    double boundary_eps = 1e-8;
};

/// Canonical form of a pair of orthogonal projections:
///   H = M_00 + M_01 + M_10 + M_11 + M + M,
/// with P = (1,1,0,0) + [[I,0],[0,0]] and
///      Q = (1,0,1,0) + [[I-H, sqrt(H(I-H))], [sqrt(H(I-H)), H]].
/// Column k of generic_first and generic_second span the copy of the H-eigenvector
/// with eigenvalue h_values[k]; generic_second[k] = (I-P) Q generic_first[k] / sqrt(h(1-h)).
struct HalmosDecomposition {
    std::size_t dimension = 0;
    std::array<ComplexMatrix, 4> intersections;  // indexed by Corner
    ComplexMatrix generic_first;
    ComplexMatrix generic_second;
    std::vector<double> h_values;  // ascending, each in (0,1)

    std::size_t generic_dimension() const noexcept { return h_values.size(); }
    const ComplexMatrix& subspace(Corner c) const { return intersections[static_cast<int>(c)]; }
    std::array<bool, 4> present() const noexcept;
    /// Unitary [M_00 | M_01 | M_10 | M_11 | first copy | second copy].
    ComplexMatrix basis() const;
};

HalmosDecomposition decompose(const ComplexMatrix& p, const ComplexMatrix& q,
                              const HalmosOptions& options = {});

/// P and Q rebuilt from the canonical blocks.
std::pair<ComplexMatrix, ComplexMatrix> reconstruct(const HalmosDecomposition& d);

/// Concrete matrix of an element over this decomposition. Symbol entries are
/// evaluated at the model atom nearest each h (ModelMismatch beyond 1e-9).
ComplexMatrix assemble(const HalmosDecomposition& d, const WStarElement& a);

/// Symbol of a concrete matrix A as a pointwise table over the atoms {h_k}.
/// Throws NotInAlgebra or DegenerateSpectrum.
WStarElement extract_symbol(const HalmosDecomposition& d, const ComplexMatrix& a, double tol = 1e-9);

} // namespace twoproj
