#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hookext/combinatorics.hpp"
#include "hookext/int.hpp"

namespace hookext::dpa {

/// One divided-power factor: exponent of every letter (fixed alphabet size).
using DividedMonomial = std::vector<int>;

/// Ordered tensor product of divided-power factors.
using TensorMonomial = std::vector<DividedMonomial>;

int degree(const DividedMonomial& m);
std::vector<int> profile(const TensorMonomial& t);
combinatorics::Composition weight(const TensorMonomial& t);

/// Sparse integer linear combination of tensor monomials.  Keys are kept in
/// lexicographic order on the flattened exponent tuples, so iteration and
/// serialization are deterministic.  All ops preserve homogeneity.
class DPAElement {
 public:
  DPAElement() = default;

  static DPAElement monomial(TensorMonomial t, Int c = 1);

  void add_term(const TensorMonomial& t, const Int& c);
  DPAElement& operator+=(const DPAElement& o);
  DPAElement& operator*=(const Int& c);
  friend DPAElement operator+(DPAElement a, const DPAElement& b) { return a += b; }
  friend DPAElement operator*(const Int& c, DPAElement a) { return a *= c; }

  bool operator==(const DPAElement& o) const { return terms_ == o.terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<TensorMonomial, Int>& terms() const { return terms_; }

  std::string to_string() const;

 private:
  std::map<TensorMonomial, Int> terms_;
};

/// Product of two divided monomials over the same alphabet: the coefficient
/// is the product over letters of C(x_k + y_k, x_k), the monomial is x + y.
std::pair<Int, DividedMonomial> mono_product(const DividedMonomial& x,
                                             const DividedMonomial& y);

/// Degree-(p,q) component of the comultiplication of one divided monomial:
/// the sum of u (x) v over all exponent splits u + v = x with |u| = p,
/// |v| = q, every coefficient 1.
DPAElement delta_split(const DividedMonomial& x, int p, int q);

/// (1^(alpha_1)) (x) (2^(alpha_2)) (x) ... : the k-th factor is the k-th
/// letter raised to alpha_k, alphabet size = alpha.size().
TensorMonomial canonical_monomial(const combinatorics::Composition& alpha);

/// Apply a local map to the factors selected by `positions` (0-based, in the
/// order given).  The image's factors replace the selection at the slot of
/// positions[0]; the other selected slots disappear.  The local map must
/// return elements of one fixed profile.
DPAElement apply_at(const DPAElement& e, const std::vector<std::size_t>& positions,
                    const std::function<DPAElement(const TensorMonomial&)>& local);

/// Merge factor `src` into factor `dst` by multiplication (dst keeps its
/// slot, src's slot disappears).
DPAElement merge_factors(const DPAElement& e, std::size_t dst, std::size_t src);

/// Replace factor `pos` by its (p,q) comultiplication component, stretching
/// the tensor by one slot.
DPAElement split_factor(const DPAElement& e, std::size_t pos, int p, int q);

}  // namespace hookext::dpa
