#pragma once

#include <string>
#include <vector>

#include "hookext/combinatorics.hpp"
#include "hookext/matrix.hpp"

namespace hookext::presentation {

using combinatorics::HookParams;
using combinatorics::WeightLabel;

/// Identity of one matrix row: owning weight label plus the 1-based local
/// index inside that label's block (always 1 for u rows).
struct RowId {
  WeightLabel label;
  int local = 1;
  std::string to_string() const;
  bool operator==(const RowId& o) const {
    return label == o.label && local == o.local;
  }
};

/// Identity of one matrix column: column group v_j, 1-based index t inside
/// the group (v_1 has width 1, every other group width b-1).
struct ColId {
  int j = 1;
  int t = 1;
  std::string to_string() const;
  bool operator==(const ColId& o) const { return j == o.j && t == o.t; }
};

/// Index arithmetic for the fixed block layout: rows are u(2..b-1) then the
/// groups w(i), w(i,i+1), ..., w(i,b-1) for i = 2..b-1; columns are v_1 then
/// v_2..v_b, each of width b-1.
struct BlockLayout {
  int b;

  explicit BlockLayout(int b_);

  int rows() const;
  int cols() const { return 1 + (b - 1) * (b - 1); }

  int urow(int i) const;                  // 0-based row of u(i)
  int wrow(int i, int l) const;           // 0-based row l of the w(i) block
  int wijrow(int i, int j, int l) const;  // 0-based row l of the w(i,j) block
  int row(const RowId& id) const;
  int col(int j, int t = 1) const;        // 0-based column t of group v_j
  int col(const ColId& id) const { return col(id.j, id.t); }

  std::vector<RowId> row_ids() const;
  std::vector<ColId> col_ids() const;
};

/// Integer matrix together with the row/column identities of its blocks.
struct LabeledIntMatrix {
  HookParams params;
  IntMatrix m;
  std::vector<RowId> row_ids;
  std::vector<ColId> col_ids;

  BlockLayout layout() const { return BlockLayout(params.b); }
};

/// Row block of u(i) against column group v_j (1 x width(v_j)).
IntMatrix block_A(int i, int j, const HookParams& p);
/// Row block of w(i) against column group v_j ((b-2) x width(v_j)).
IntMatrix block_B(int i, int j, const HookParams& p);
/// Row block of w(i,j) against column group v_h ((b-2) x width(v_h)).
IntMatrix block_C(int i, int j, int h, const HookParams& p);

/// The full s x t presentation matrix assembled from the closed-form blocks.
LabeledIntMatrix build_M(const HookParams& p);

}  // namespace hookext::presentation
