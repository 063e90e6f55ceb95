#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hookext/int.hpp"
#include "hookext/matrix.hpp"

namespace hookext::intlin {

/// Smith normal form of an integer matrix.  `factors` has length
/// min(rows, cols), is nonnegative, and satisfies the divisibility chain
/// d1 | d2 | ... with zeros trailing.  When transforms are requested,
/// U * A * V = diag(factors) with U, V unimodular.
struct SNFResult {
  std::vector<Int> factors;
  std::size_t rank = 0;
  std::optional<IntMatrix> U;
  std::optional<IntMatrix> V;

  std::vector<Int> nonzero_factors() const {
    return {factors.begin(), factors.begin() + rank};
  }
};

/// Finite abelian group presented by its nontrivial cyclic orders
/// (each > 1, each dividing the next).  Empty means the trivial group.
struct ExtGroup {
  std::vector<Int> orders;

  bool trivial() const { return orders.empty(); }
  bool operator==(const ExtGroup& o) const { return orders == o.orders; }
  bool operator!=(const ExtGroup& o) const { return !(*this == o); }
  std::string to_string() const;
};

/// Elementary-operation Smith normal form with minimal-absolute-value pivot
/// selection.  Exact over arbitrary-precision integers.
SNFResult snf(const IntMatrix& a, bool with_transforms = false);

/// Determinantal-divisor route to the invariant factors: delta_i is the gcd
/// of all i x i minors and d_i = delta_i / delta_{i-1}.  Exponential in the
/// matrix size, so refuse matrices with min dimension beyond `cap`.
std::vector<Int> minors_invariants(const IntMatrix& a, std::size_t cap = 8);

/// Torsion part of the cokernel presented by the SNF: the invariant factors
/// that exceed 1 (zeros contribute free rank, not torsion).
ExtGroup torsion(const SNFResult& r);

/// Exact determinant (Bareiss fraction-free elimination).
Int determinant(const IntMatrix& a);

}  // namespace hookext::intlin
