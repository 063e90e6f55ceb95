#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "hookext/combinatorics.hpp"
#include "hookext/dpa.hpp"
#include "hookext/matrix.hpp"

namespace hookext::weyl {

/// The weight-alpha slice of the two-row Weyl module of shape (mu1, mu2),
/// modeled as the quotient of the monomial lattice of (D_mu1 (x) D_mu2)_alpha
/// by the box relations.  Construction verifies that the quotient is free
/// with the standard tableau images as a basis and precomputes the exact
/// integer projection onto their coordinates.
class WeylWeightSpace {
 public:
  /// Builds the space.  A candidate reduction matrix (e.g. from a disk
  /// cache) is used only after revalidation; pass nullptr to compute.
  WeylWeightSpace(int mu1, int mu2, combinatorics::Composition alpha,
                  const IntMatrix* cached_reduction = nullptr);

  int mu1() const { return mu1_; }
  int mu2() const { return mu2_; }
  const combinatorics::Composition& alpha() const { return alpha_; }

  const std::vector<dpa::TensorMonomial>& basis() const { return basis_; }
  const std::vector<combinatorics::TwoRowTableau>& standard() const {
    return standard_;
  }
  std::size_t rank() const { return standard_.size(); }

  /// Coordinates of (the class of) e in the standard tableau basis.
  /// e must be homogeneous of profile (mu1, mu2) and weight alpha.
  std::vector<Int> straighten(const dpa::DPAElement& e) const;

  /// Coordinate vector of e over the monomial basis.
  std::vector<Int> monomial_coords(const dpa::DPAElement& e) const;

  /// The k x N projection matrix (k = rank, N = monomial count).
  const IntMatrix& reduction() const { return reduction_; }

  /// The monomial of a standard tableau as a two-factor tensor.
  dpa::TensorMonomial tableau_tensor(const combinatorics::TwoRowTableau& t) const;

 private:
  int mu1_, mu2_;
  combinatorics::Composition alpha_;
  std::vector<dpa::TensorMonomial> basis_;
  std::map<dpa::TensorMonomial, std::size_t> index_;
  std::vector<combinatorics::TwoRowTableau> standard_;
  IntMatrix reduction_;
};

/// Box relation generators for (K_mu)_alpha: one element of
/// (D_mu1 (x) D_mu2)_alpha per monomial of (D_{mu1+l} (x) D_{mu2-l})_alpha
/// for every l >= 1 (all transfers are needed for an integrally saturated
/// relation lattice; the l = 1 family alone leaves torsion).
std::vector<dpa::DPAElement> box_relations(int mu1, int mu2,
                                           const combinatorics::Composition& alpha);

/// Build (or fetch) the weight space for (mu1, mu2, alpha).  Thread safe;
/// spaces are immutable once built.  An optional directory caches the
/// reduction data on disk between runs.
class WeightSpaceCache {
 public:
  WeightSpaceCache() = default;
  explicit WeightSpaceCache(std::string cache_dir) : dir_(std::move(cache_dir)) {}

  std::shared_ptr<const WeylWeightSpace> get(int mu1, int mu2,
                                             const combinatorics::Composition& alpha);

 private:
  std::string dir_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<const WeylWeightSpace>> map_;
};

/// Convenience: uncached construction.
inline WeylWeightSpace weight_space(int mu1, int mu2,
                                    const combinatorics::Composition& alpha) {
  return WeylWeightSpace(mu1, mu2, alpha);
}

}  // namespace hookext::weyl
