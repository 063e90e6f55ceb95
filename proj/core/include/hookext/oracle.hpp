#pragma once

#include <string>
#include <vector>

#include "hookext/dpa.hpp"
#include "hookext/presentation.hpp"
#include "hookext/weyl.hpp"

namespace hookext::oracle {

using combinatorics::HookParams;
using combinatorics::WeightLabel;

/// One additive component of the boundary map restricted to a row family:
/// split the factor at `position` (0-based) into degrees (p, q), landing in
/// the column family v_{target_j}, with the given sign.
struct D2Component {
  int target_j;
  int position;
  int p;
  int q;
  int sign;
};

/// Boundary components of a u/w row family (throws for v labels and u(1)).
std::vector<D2Component> d2_components(const WeightLabel& row, const HookParams& p);

/// The functional attached to column (v_j, t) evaluated on an element with
/// the factor profile of v_j: merge into two factors the way the tableau
/// basis of the target weight space prescribes.  l = t + 1 is the 1-based
/// subscript; l == j splits the doubled factor first.
dpa::DPAElement sigma_eval(int j, int l, const dpa::DPAElement& e, const HookParams& p);

/// The functional attached to row (row, l) evaluated on an element with the
/// row family's factor profile (the hom-basis dual of sigma_eval).
dpa::DPAElement pi_eval(const WeightLabel& row, int l, const dpa::DPAElement& e,
                        const HookParams& p);

/// Rebuild one block of the presentation matrix from first principles:
/// evaluate sigma o d_2 on the canonical generator of the row family and
/// straighten in the target weight space.
IntMatrix oracle_block(const WeightLabel& row, int j, const HookParams& p,
                       weyl::WeightSpaceCache& cache);

/// The full matrix, every entry derived independently of the closed forms.
/// At the boundary a+1 = b-1 the functional families degenerate, so the
/// entries are continued affinely in a from the three nearest strict
/// parameters (with an exact affineness check).
presentation::LabeledIntMatrix oracle_M(const HookParams& p,
                                        weyl::WeightSpaceCache& cache);

/// Verify that the hom-space bases behind the rows and the columns really
/// straighten to unit coordinate vectors: every row functional hits its own
/// standard tableau with coefficient 1, and likewise every column
/// functional.  Requires the strict hypothesis a+1 > b-1; at the boundary
/// the families are provably not bases (the standard count drops), so the
/// check throws instead of reporting a vacuous failure.  Returns true on
/// success; on failure appends a description of the first mismatch to
/// *diag if given.
bool hom_basis_check(const HookParams& p, weyl::WeightSpaceCache& cache,
                     std::string* diag = nullptr);

}  // namespace hookext::oracle
