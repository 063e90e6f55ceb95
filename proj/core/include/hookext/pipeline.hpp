#pragma once

#include <string>
#include <vector>

#include "hookext/combinatorics.hpp"
#include "hookext/intlin.hpp"
#include "hookext/matrix.hpp"
#include "hookext/presentation.hpp"

namespace hookext::pipeline {

using combinatorics::HookParams;

/// One verified structural claim about a stage matrix.
struct CheckItem {
  std::string id;
  bool pass = true;
  std::string detail;  // empty when pass
};

/// One reduction step: the matrix after applying it plus its claim results.
struct StageRecord {
  std::string id;      // "D1".."D11", "F1".."F13", "F4.1", "F4.2", "SNF"
  IntMatrix after;     // empty when ReduceOptions::keep_matrices is off
  std::uint64_t content_hash = 0;  // hash of the stage matrix, always set
  std::vector<CheckItem> checks;
  bool pass = true;
};

/// Full reduction transcript: every stage is unimodularly equivalent to the
/// input, and the final matrix is the canonical equivalent form (identity
/// block, small residual block, zero padding).
struct PipelineTrace {
  explicit PipelineTrace(presentation::LabeledIntMatrix init)
      : params(init.params), initial(std::move(init)), final(initial) {}

  HookParams params;
  presentation::LabeledIntMatrix initial;
  std::vector<StageRecord> stages;
  presentation::LabeledIntMatrix final;
  int r = 0;              // identity-block size of the canonical form
  IntMatrix final_block;  // the non-identity block ([2 w] or a 3x3 block)
  std::vector<Int> snf_factors;  // invariant factors of the input matrix
  bool all_checks_pass = true;
};

struct ReduceOptions {
  bool verify_stages = true;  // run the per-stage structural claims
  bool snf_stages = true;     // assert factor equality after every stage
  bool keep_matrices = true;  // store each stage matrix in the trace
  bool strict = false;        // throw on the first failed claim
};

/// Reduce M(a,b) by the explicit staged elimination: the eleven-step path
/// for b >= 7, the same with a split fourth step for b = 6, the thirteen-
/// and seven-step specializations for b = 5 and b = 4, and plain Smith
/// reduction for b = 3 (no staged pipeline exists there).
PipelineTrace reduce(const HookParams& p, const ReduceOptions& opts = {});

/// The predicted shape after the tenth step (defined for b >= 5): unit
/// entries from the simplified w-blocks plus the sparse leftover rows.
IntMatrix predicted_m10(const HookParams& p);

/// Expected canonical residual block: [2 w] for b >= 6, the documented
/// 3x3 blocks for b = 4 and b = 5.
IntMatrix expected_residual(const HookParams& p);

/// Expected identity-block size: b(b-3)+1 for b >= 6, 4 for b = 4,
/// 10 for b = 5.
int expected_rank_block(const HookParams& p);

}  // namespace hookext::pipeline
