#pragma once

#include <string>

#include "hookext/ext.hpp"
#include "hookext/pipeline.hpp"
#include "hookext/presentation.hpp"

namespace hookext::serialize {

/// {"a","b","s","t","row_labels","col_labels","rows"} with every entry a
/// decimal string, so arbitrary-precision values survive the round trip.
/// Key order and row order are fixed; output is deterministic.
std::string matrix_json(const presentation::LabeledIntMatrix& m);

/// Header row of column labels (quoted where needed), then one line of
/// decimal entries per matrix row.
std::string matrix_csv(const presentation::LabeledIntMatrix& m);

/// Aligned text table with row and column labels.
std::string matrix_pretty(const presentation::LabeledIntMatrix& m);

/// Sweep report: one object per cell with a, b, s, t, the nontrivial
/// invariant factors, predicted and computed groups, and the match flag.
/// Timing is intentionally omitted so output is identical across runs.
std::string sweep_json(const ext::VerifyReport& r);
std::string sweep_csv(const ext::VerifyReport& r);
std::string sweep_pretty(const ext::VerifyReport& r);

/// Reduction trace: per-stage id, pass flag, content hash and check list;
/// `full` additionally embeds each stage's matrix (requires the trace to
/// have been produced with keep_matrices).
std::string trace_json(const pipeline::PipelineTrace& t, bool full = false);
std::string trace_pretty(const pipeline::PipelineTrace& t);

}  // namespace hookext::serialize
