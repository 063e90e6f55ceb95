#include "hookext/presentation.hpp"

#include <stdexcept>

namespace hookext::presentation {

std::string RowId::to_string() const {
  std::string s = label.to_string();
  if (label.kind != WeightLabel::Kind::U) s += ":" + std::to_string(local);
  return s;
}

std::string ColId::to_string() const {
  std::string s = "v(" + std::to_string(j) + ")";
  if (j != 1) s += ":" + std::to_string(t);
  return s;
}

BlockLayout::BlockLayout(int b_) : b(b_) {
  if (b < 3) throw std::invalid_argument("block layout needs b >= 3");
}

int BlockLayout::rows() const {
  return (b - 2) * (1 + (b - 1) * (b - 2) / 2);
}

int BlockLayout::urow(int i) const {
  if (i < 2 || i > b - 1) throw std::out_of_range("u row index");
  return i - 2;
}

int BlockLayout::wrow(int i, int l) const {
  if (i < 2 || i > b - 1) throw std::out_of_range("w block index");
  if (l < 1 || l > b - 2) throw std::out_of_range("w row local index");
  // Blocks for i' < i contribute 1 + (b-1-i') groups of height b-2 each.
  int groups = 0;
  for (int ip = 2; ip < i; ++ip) groups += b - ip;
  return (b - 2) + groups * (b - 2) + (l - 1);
}

int BlockLayout::wijrow(int i, int j, int l) const {
  if (!(2 <= i && i < j && j <= b - 1)) throw std::out_of_range("w(i,j) block index");
  return wrow(i, l) + (b - 2) * (j - i);
}

int BlockLayout::row(const RowId& id) const {
  switch (id.label.kind) {
    case WeightLabel::Kind::U:
      return urow(id.label.i);
    case WeightLabel::Kind::W:
      return wrow(id.label.i, id.local);
    case WeightLabel::Kind::WW:
      return wijrow(id.label.i, id.label.j, id.local);
    default:
      throw std::invalid_argument("v labels do not name rows");
  }
}

int BlockLayout::col(int j, int t) const {
  if (j < 1 || j > b) throw std::out_of_range("column group index");
  if (j == 1) {
    if (t != 1) throw std::out_of_range("v_1 has a single column");
    return 0;
  }
  if (t < 1 || t > b - 1) throw std::out_of_range("column index inside group");
  return 1 + (j - 2) * (b - 1) + (t - 1);
}

std::vector<RowId> BlockLayout::row_ids() const {
  std::vector<RowId> ids;
  ids.reserve(static_cast<std::size_t>(rows()));
  for (const auto& label : combinatorics::p2_row_labels(b)) {
    int h = label.block_height(b);
    for (int l = 1; l <= h; ++l) ids.push_back(RowId{label, l});
  }
  return ids;
}

std::vector<ColId> BlockLayout::col_ids() const {
  std::vector<ColId> ids;
  ids.reserve(static_cast<std::size_t>(cols()));
  ids.push_back(ColId{1, 1});
  for (int j = 2; j <= b; ++j)
    for (int t = 1; t <= b - 1; ++t) ids.push_back(ColId{j, t});
  return ids;
}

namespace {

int sign_pm(int k) { return (k % 2 == 0) ? -1 : 1; }  // (-1)^(k+1)

// Shared skeleton of the B and C blocks: diag I_{p-1} scaled by `diag`, a
// special row (x, y) at row p spanning columns (p, p+1), then the scaled
// identity resumes one column to the right.
IntMatrix banded_block(int b, int p, const Int& diag, const Int& x, const Int& y,
                       int sign) {
  IntMatrix m(b - 2, b - 1);
  for (int l = 1; l <= b - 2; ++l) {
    if (l < p) {
      m.at(l - 1, l - 1) = sign * diag;
    } else if (l == p) {
      m.at(l - 1, l - 1) = sign * x;
      m.at(l - 1, l) = sign * y;
    } else {
      m.at(l - 1, l) = sign * diag;
    }
  }
  return m;
}

}  // namespace

IntMatrix block_A(int i, int j, const HookParams& p) {
  const int b = p.b;
  if (i < 2 || i > b - 1) throw std::out_of_range("u row index");
  if (j == 1) {
    IntMatrix m(1, 1);
    m.at(0, 0) = sign_pm(i) * Int(2);
    return m;
  }
  IntMatrix m(1, b - 1);
  if (j != i + 1) return m;
  m.at(0, 0) = Int(p.a) + 1;
  for (int t = 2; t <= b - 1; ++t) m.at(0, t - 1) = (t == i) ? Int(-2) : Int(-1);
  return m;
}

IntMatrix block_B(int i, int j, const HookParams& p) {
  const int b = p.b;
  if (i < 2 || i > b - 1) throw std::out_of_range("w block index");
  if (j == 1) return IntMatrix(b - 2, 1);
  if (j == i) return banded_block(b, i - 1, 3, 2, 1, sign_pm(i));
  if (j == i + 1) return banded_block(b, i - 1, 3, 1, 2, sign_pm(i));
  return IntMatrix(b - 2, b - 1);
}

IntMatrix block_C(int i, int j, int h, const HookParams& p) {
  const int b = p.b;
  if (!(2 <= i && i < j && j <= b - 1)) throw std::out_of_range("w(i,j) block index");
  if (h == 1) return IntMatrix(b - 2, 1);
  if (h == i) return banded_block(b, j - 1, 2, 1, 1, sign_pm(j));
  if (h == j + 1) return banded_block(b, i - 1, 2, 1, 1, sign_pm(i));
  return IntMatrix(b - 2, b - 1);
}

LabeledIntMatrix build_M(const HookParams& p) {
  const int b = p.b;
  BlockLayout lay(b);
  IntMatrix m(lay.rows(), lay.cols());

  auto paste = [&](const IntMatrix& blk, int r0, int c0) {
    for (int r = 0; r < blk.rows(); ++r)
      for (int c = 0; c < blk.cols(); ++c)
        if (blk.at(r, c) != 0) m.at(r0 + r, c0 + c) = blk.at(r, c);
  };

  for (int i = 2; i <= b - 1; ++i) {
    paste(block_A(i, 1, p), lay.urow(i), 0);
    for (int j = 2; j <= b; ++j) paste(block_A(i, j, p), lay.urow(i), lay.col(j));
  }
  for (int i = 2; i <= b - 1; ++i) {
    for (int j = 2; j <= b; ++j) paste(block_B(i, j, p), lay.wrow(i, 1), lay.col(j));
    for (int jj = i + 1; jj <= b - 1; ++jj)
      for (int h = 2; h <= b; ++h)
        paste(block_C(i, jj, h, p), lay.wijrow(i, jj, 1), lay.col(h));
  }

  return LabeledIntMatrix{p, std::move(m), lay.row_ids(), lay.col_ids()};
}

}  // namespace hookext::presentation
