#pragma once

#include <string>
#include <vector>

#include "hookext/int.hpp"

namespace hookext::combinatorics {

/// Exponent composition: entry k is the multiplicity of letter k+1.  Two
/// compositions are equal when they agree after stripping trailing zeros.
struct Composition {
  std::vector<int> parts;

  Composition() = default;
  Composition(std::initializer_list<int> p) : parts(p) {}
  explicit Composition(std::vector<int> p) : parts(std::move(p)) {}

  int weight() const {
    int w = 0;
    for (int p : parts) w += p;
    return w;
  }
  std::size_t size() const { return parts.size(); }
  int operator[](std::size_t i) const { return i < parts.size() ? parts[i] : 0; }

  Composition normalized() const {
    Composition c = *this;
    while (!c.parts.empty() && c.parts.back() == 0) c.parts.pop_back();
    return c;
  }
  bool operator==(const Composition& o) const {
    return normalized().parts == o.normalized().parts;
  }
  bool operator!=(const Composition& o) const { return !(*this == o); }
  bool operator<(const Composition& o) const {
    return normalized().parts < o.normalized().parts;
  }
  std::string to_string() const;
};

/// Hook/two-row parameter pair.  lambda = (a, 1^b) and mu = (a+1, b-1) with
/// mu required to be a partition (a+1 >= b-1); the matrix machinery
/// additionally needs b >= 3, which the callers that build matrices enforce.
struct HookParams {
  int a = 0;
  int b = 0;

  HookParams(int a_, int b_);

  int r() const { return a + b; }                        // degree
  int s() const;                                         // presentation rows
  int t() const { return 1 + (b - 1) * (b - 1); }        // presentation cols
  int omega() const { return b % 2 == 0 ? a + 2 : a + 1; }
  std::vector<int> lambda() const;                       // (a, 1^b)
  std::vector<int> mu() const { return {a + 1, b - 1}; }
};

/// Label of a weight row/column family: v(i), u(i), w(i) or w(i,j).
struct WeightLabel {
  enum class Kind { V, U, W, WW };
  Kind kind = Kind::V;
  int i = 0;
  int j = 0;  // only Kind::WW

  static WeightLabel v(int i) { return {Kind::V, i, 0}; }
  static WeightLabel u(int i) { return {Kind::U, i, 0}; }
  static WeightLabel w(int i) { return {Kind::W, i, 0}; }
  static WeightLabel ww(int i, int j) { return {Kind::WW, i, j}; }

  bool operator==(const WeightLabel& o) const {
    return kind == o.kind && i == o.i && j == o.j;
  }
  bool operator!=(const WeightLabel& o) const { return !(*this == o); }
  std::string to_string() const;

  /// Number of matrix rows this label owns: 1 for u(i), b-2 otherwise.
  int block_height(int b) const { return kind == Kind::U ? 1 : b - 2; }

  /// The composition this label denotes, for the given hook parameters.
  Composition weight(const HookParams& p) const;
};

/// Two-row tableau of shape (mu1, mu2): weakly increasing rows, strictly
/// increasing columns.  Rows are stored as sorted letter words.
struct TwoRowTableau {
  std::vector<int> row1;
  std::vector<int> row2;

  bool operator==(const TwoRowTableau& o) const {
    return row1 == o.row1 && row2 == o.row2;
  }
  bool operator<(const TwoRowTableau& o) const {
    if (row1 != o.row1) return row1 < o.row1;
    return row2 < o.row2;
  }
  bool is_standard() const;
  Composition content(int n) const;
  std::string to_string() const;
};

/// Column-weight compositions v_1, ..., v_b in block order, each with b parts.
std::vector<Composition> p1_weights(const HookParams& p);

/// Row labels in matrix block order: u(2..b-1), then for each i the group
/// w(i), w(i,i+1), ..., w(i,b-1).  u(1) carries no rows and is excluded.
std::vector<WeightLabel> p2_row_labels(int b);

/// All standard tableaux of two-row shape (mu1, mu2) and the given content,
/// ordered by ascending lexicographic row-1 word.  Letters run over
/// 1..content.size().
std::vector<TwoRowTableau> standard_tableaux(int mu1, int mu2,
                                             const Composition& content);

/// Exponent vectors (row-1 multiplicities, row-2 multiplicities) of a tableau
/// over the alphabet 1..n.
std::pair<std::vector<int>, std::vector<int>> tableau_monomial(
    const TwoRowTableau& t, int n);

}  // namespace hookext::combinatorics
