#include "hookext/oracle.hpp"

#include <sstream>
#include <stdexcept>

namespace hookext::oracle {

using combinatorics::Composition;
using dpa::DPAElement;

namespace {

int sign_pm(int k) { return (k % 2 == 0) ? -1 : 1; }  // (-1)^(k+1)

int factor_count(const DPAElement& e) {
  if (e.is_zero()) return 0;
  return static_cast<int>(e.terms().begin()->first.size());
}

// Multiply factors 1.. into a single second factor, leaving factor 0 alone.
DPAElement fold_tail(DPAElement e) {
  int n = factor_count(e);
  while (n > 2) {
    e = dpa::merge_factors(e, 1, 2);
    --n;
  }
  return e;
}

}  // namespace

std::vector<D2Component> d2_components(const WeightLabel& row, const HookParams& p) {
  const int b = p.b;
  switch (row.kind) {
    case WeightLabel::Kind::U: {
      const int i = row.i;
      if (i < 2 || i > b - 1) throw std::invalid_argument("u(1) carries no rows");
      return {{i + 1, 0, p.a, 1, 1}, {1, i - 1, 1, 1, sign_pm(i)}};
    }
    case WeightLabel::Kind::W: {
      const int i = row.i;
      return {{i, i - 1, 2, 1, sign_pm(i)}, {i + 1, i - 1, 1, 2, sign_pm(i)}};
    }
    case WeightLabel::Kind::WW: {
      const int i = row.i, j = row.j;
      return {{j + 1, i - 1, 1, 1, sign_pm(i)}, {i, j - 1, 1, 1, sign_pm(j)}};
    }
    default:
      throw std::invalid_argument("v labels have no boundary components");
  }
}

dpa::DPAElement sigma_eval(int j, int l, const dpa::DPAElement& e, const HookParams& p) {
  const int b = p.b;
  if (e.is_zero()) return e;
  if (factor_count(e) != b) throw std::invalid_argument("sigma input needs b factors");
  if (Composition(dpa::profile(e.terms().begin()->first)) !=
      WeightLabel::v(j).weight(p))
    throw std::invalid_argument("sigma input has the wrong factor profile");
  if (j == 1) return fold_tail(e);
  if (l < 2 || l > b) throw std::invalid_argument("sigma subscript out of range");
  if (l != j) return fold_tail(dpa::merge_factors(e, 0, l - 1));
  DPAElement s = dpa::split_factor(e, j - 1, 1, 1);
  return fold_tail(dpa::merge_factors(s, 0, j - 1));
}

dpa::DPAElement pi_eval(const WeightLabel& row, int l, const dpa::DPAElement& e,
                        const HookParams& p) {
  const int b = p.b;
  if (e.is_zero()) return e;
  if (Composition(dpa::profile(e.terms().begin()->first)) != row.weight(p))
    throw std::invalid_argument("pi input has the wrong factor profile");
  switch (row.kind) {
    case WeightLabel::Kind::U:
      if (l != 1) throw std::invalid_argument("u rows have a single functional");
      return fold_tail(e);
    case WeightLabel::Kind::W: {
      const int i = row.i, jj = l + 1;
      if (jj < 2 || jj > b - 1) throw std::invalid_argument("pi subscript out of range");
      if (jj != i) return fold_tail(dpa::merge_factors(e, 0, jj - 1));
      DPAElement s = dpa::split_factor(e, i - 1, 1, 2);
      return fold_tail(dpa::merge_factors(s, 0, i - 1));
    }
    case WeightLabel::Kind::WW: {
      const int i = row.i, j = row.j, h = l + 1;
      if (h < 2 || h > b - 1) throw std::invalid_argument("pi subscript out of range");
      if (h != i && h != j) return fold_tail(dpa::merge_factors(e, 0, h - 1));
      DPAElement s = dpa::split_factor(e, h - 1, 1, 1);
      return fold_tail(dpa::merge_factors(s, 0, h - 1));
    }
    default:
      throw std::invalid_argument("v labels have no row functionals");
  }
}

IntMatrix oracle_block(const WeightLabel& row, int j, const HookParams& p,
                       weyl::WeightSpaceCache& cache) {
  const int b = p.b;
  const int height = row.block_height(b);
  const int width = (j == 1) ? 1 : b - 1;
  IntMatrix blk(height, width);

  std::vector<D2Component> comps;
  for (const auto& c : d2_components(row, p))
    if (c.target_j == j) comps.push_back(c);
  if (comps.empty()) return blk;

  auto space = cache.get(p.a + 1, b - 1, row.weight(p));
  if (static_cast<int>(space->rank()) != height)
    throw std::logic_error("standard basis size disagrees with the block height");

  const DPAElement x =
      DPAElement::monomial(dpa::canonical_monomial(row.weight(p)));
  for (int t = 1; t <= width; ++t) {
    const int l = (j == 1) ? 1 : t + 1;
    DPAElement g;
    for (const auto& c : comps) {
      DPAElement split = dpa::split_factor(x, c.position, c.p, c.q);
      g += Int(c.sign) * sigma_eval(j, l, split, p);
    }
    const std::vector<Int> coords = space->straighten(g);
    for (int r = 0; r < height; ++r) blk.at(r, t - 1) = coords[r];
  }
  return blk;
}

presentation::LabeledIntMatrix oracle_M(const HookParams& p,
                                        weyl::WeightSpaceCache& cache) {
  const int b = p.b;
  if (p.a + 1 == b - 1) {
    // At the boundary a+1 = b-1 the row functional families stop being
    // bases (the tableau S_{i,b} loses its last column and the standard
    // count drops), so coordinates cannot be read off directly.  Every
    // matrix entry is affine in a, so derive the three nearest strict
    // parameters, check affineness, and extrapolate one step back.
    const auto m1 = oracle_M(HookParams(p.a + 1, b), cache);
    const auto m2 = oracle_M(HookParams(p.a + 2, b), cache);
    const auto m3 = oracle_M(HookParams(p.a + 3, b), cache);
    presentation::BlockLayout lay(b);
    IntMatrix m(lay.rows(), lay.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) {
        const Int step = m2.m.at(r, c) - m1.m.at(r, c);
        if (m3.m.at(r, c) - m2.m.at(r, c) != step)
          throw std::logic_error("matrix entry is not affine in a at row " +
                                 std::to_string(r) + ", col " +
                                 std::to_string(c));
        m.at(r, c) = m1.m.at(r, c) - step;
      }
    return presentation::LabeledIntMatrix{p, std::move(m), lay.row_ids(),
                                          lay.col_ids()};
  }
  presentation::BlockLayout lay(b);
  IntMatrix m(lay.rows(), lay.cols());

  auto paste = [&](const IntMatrix& blk, int r0, int c0) {
    for (std::size_t r = 0; r < blk.rows(); ++r)
      for (std::size_t c = 0; c < blk.cols(); ++c)
        if (blk.at(r, c) != 0) m.at(r0 + r, c0 + c) = blk.at(r, c);
  };

  for (const auto& row : combinatorics::p2_row_labels(b)) {
    const int r0 = lay.row(presentation::RowId{row, 1});
    paste(oracle_block(row, 1, p, cache), r0, 0);
    for (int j = 2; j <= b; ++j)
      paste(oracle_block(row, j, p, cache), r0, lay.col(j));
  }
  return presentation::LabeledIntMatrix{p, std::move(m), lay.row_ids(),
                                        lay.col_ids()};
}

namespace {

bool is_unit_vector(const std::vector<Int>& v, std::size_t at) {
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] != (k == at ? 1 : 0)) return false;
  return true;
}

}  // namespace

bool hom_basis_check(const HookParams& p, weyl::WeightSpaceCache& cache,
                     std::string* diag) {
  const int b = p.b;
  if (p.a + 1 <= b - 1)
    throw std::invalid_argument(
        "hom_basis_check needs a+1 > b-1: the functional families are not "
        "bases at the boundary");
  auto fail = [&](const std::string& what) {
    if (diag) *diag += what + "\n";
    return false;
  };

  for (const auto& row : combinatorics::p2_row_labels(b)) {
    auto space = cache.get(p.a + 1, b - 1, row.weight(p));
    const int height = row.block_height(b);
    if (static_cast<int>(space->rank()) != height)
      return fail("standard tableau count mismatch at " + row.to_string());
    const DPAElement x =
        DPAElement::monomial(dpa::canonical_monomial(row.weight(p)));
    for (int l = 1; l <= height; ++l) {
      const auto coords = space->straighten(pi_eval(row, l, x, p));
      if (!is_unit_vector(coords, static_cast<std::size_t>(l - 1)))
        return fail("row functional " + row.to_string() + ":" +
                    std::to_string(l) + " is not dual to its tableau");
    }
  }

  for (int j = 1; j <= b; ++j) {
    const WeightLabel col = WeightLabel::v(j);
    auto space = cache.get(p.a + 1, b - 1, col.weight(p));
    const int width = (j == 1) ? 1 : b - 1;
    if (static_cast<int>(space->rank()) != width)
      return fail("standard tableau count mismatch at " + col.to_string());
    const DPAElement x =
        DPAElement::monomial(dpa::canonical_monomial(col.weight(p)));
    for (int t = 1; t <= width; ++t) {
      const int l = (j == 1) ? 1 : t + 1;
      const auto coords = space->straighten(sigma_eval(j, l, x, p));
      if (!is_unit_vector(coords, static_cast<std::size_t>(t - 1)))
        return fail("column functional " + col.to_string() + ":" +
                    std::to_string(t) + " is not dual to its tableau");
    }
  }
  return true;
}

}  // namespace hookext::oracle
