#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hookext/combinatorics.hpp"
#include "hookext/intlin.hpp"
#include "hookext/weyl.hpp"

namespace hookext::ext {

using combinatorics::HookParams;
using intlin::ExtGroup;

/// Closed-form prediction for Ext^2: trivial for b = 2; order gcd(2, omega)
/// for b = 3 and b >= 6; the two four-term gcds for b = 4 and b = 5.
/// Requires a >= 1, b >= 2 and a + 1 > b - 1.
ExtGroup predicted_ext2(int a, int b);

/// Where the presentation matrix comes from.
enum class Source { ClosedForm, Oracle };

/// Torsion of the cokernel of the presentation map: build the matrix
/// (closed-form blocks, or re-derived entry by entry when source==Oracle),
/// then read the invariant factors off its Smith normal form.  b = 2 needs
/// no matrix: the group vanishes.  Defined on the whole matrix domain
/// a+1 >= b-1, including the boundary the prediction does not cover.
ExtGroup compute_ext2(int a, int b, Source source = Source::ClosedForm,
                      weyl::WeightSpaceCache* cache = nullptr);

struct VerifyCell {
  int a = 0;
  int b = 0;
  ExtGroup predicted;
  ExtGroup computed;
  bool match = false;
  std::optional<ExtGroup> oracle;    // filled when options.with_oracle
  std::optional<ExtGroup> pipeline;  // filled when options.with_pipeline
  double millis = 0.0;

  bool all_agree() const;
};

struct VerifyOptions {
  int workers = 1;
  bool with_oracle = false;
  bool with_pipeline = false;
  std::string cache_dir;  // weight-space cache for oracle runs
};

struct VerifyReport {
  std::vector<VerifyCell> cells;  // sorted by (b, a)
  bool all_match = true;
  std::size_t mismatches = 0;
};

/// Check predicted vs computed over a rectangle of parameters.  Cells with
/// a + 1 <= b - 1 are skipped (outside the hypothesis).  Work is spread
/// over `workers` threads; the report order is independent of scheduling.
VerifyReport verify_range(int b_min, int b_max, int a_min, int a_max,
                          const VerifyOptions& options = {});

}  // namespace hookext::ext
