#include "hookext/combinatorics.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace hookext::combinatorics {

std::string Composition::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts[i]);
  }
  return s + ")";
}

HookParams::HookParams(int a_, int b_) : a(a_), b(b_) {
  if (a < 1 || b < 2)
    throw std::invalid_argument("hook parameters need a >= 1 and b >= 2");
  if (a + 1 < b - 1)
    throw std::invalid_argument(
        "(a+1, b-1) is not a partition: need a+1 >= b-1");
}

int HookParams::s() const {
  const int c = b - 1;
  return (b - 2) * (1 + c * (c - 1) / 2);
}

std::vector<int> HookParams::lambda() const {
  std::vector<int> l(1 + b, 1);
  l[0] = a;
  return l;
}

std::string WeightLabel::to_string() const {
  switch (kind) {
    case Kind::V: return "v(" + std::to_string(i) + ")";
    case Kind::U: return "u(" + std::to_string(i) + ")";
    case Kind::W: return "w(" + std::to_string(i) + ")";
    case Kind::WW:
      return "w(" + std::to_string(i) + "," + std::to_string(j) + ")";
  }
  return "?";
}

Composition WeightLabel::weight(const HookParams& p) const {
  const int a = p.a, b = p.b;
  std::vector<int> c;
  switch (kind) {
    case Kind::V:
      // v_1 = (a+1, 1^{b-1}); v_i = (a, 1^{i-2}, 2, 1^{b-i}) for 2 <= i <= b.
      c.assign(b, 1);
      if (i == 1) {
        c[0] = a + 1;
      } else {
        c[0] = a;
        c[i - 1] = 2;
      }
      break;
    case Kind::U:
      // u_1 = (a+2, 1^{b-2}); u_i = (a+1, 1^{i-2}, 2, 1^{b-1-i}).
      c.assign(b - 1, 1);
      if (i == 1) {
        c[0] = a + 2;
      } else {
        c[0] = a + 1;
        c[i - 1] = 2;
      }
      break;
    case Kind::W:
      // w_i = (a, 1^{i-2}, 3, 1^{b-1-i}) for 2 <= i <= b-1.
      c.assign(b - 1, 1);
      c[0] = a;
      c[i - 1] = 3;
      break;
    case Kind::WW:
      // w_ij = (a, 1^{i-2}, 2, 1^{j-1-i}, 2, 1^{b-1-j}) for 2 <= i < j <= b-1.
      c.assign(b - 1, 1);
      c[0] = a;
      c[i - 1] = 2;
      c[j - 1] = 2;
      break;
  }
  return Composition(std::move(c));
}

bool TwoRowTableau::is_standard() const {
  auto weak = [](const std::vector<int>& r) {
    for (std::size_t k = 1; k < r.size(); ++k)
      if (r[k - 1] > r[k]) return false;
    return true;
  };
  if (!weak(row1) || !weak(row2)) return false;
  if (row2.size() > row1.size()) return false;
  for (std::size_t k = 0; k < row2.size(); ++k)
    if (!(row1[k] < row2[k])) return false;
  return true;
}

Composition TwoRowTableau::content(int n) const {
  std::vector<int> c(n, 0);
  for (int x : row1) c.at(x - 1)++;
  for (int x : row2) c.at(x - 1)++;
  return Composition(std::move(c));
}

std::string TwoRowTableau::to_string() const {
  auto word = [](const std::vector<int>& r) {
    std::string s = "[";
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (k) s += ",";
      s += std::to_string(r[k]);
    }
    return s + "]";
  };
  return word(row1) + "/" + word(row2);
}

std::vector<Composition> p1_weights(const HookParams& p) {
  std::vector<Composition> out;
  out.reserve(p.b);
  for (int i = 1; i <= p.b; ++i) out.push_back(WeightLabel::v(i).weight(p));
  return out;
}

std::vector<WeightLabel> p2_row_labels(int b) {
  if (b < 3) throw std::invalid_argument("row labels need b >= 3");
  std::vector<WeightLabel> out;
  for (int i = 2; i <= b - 1; ++i) out.push_back(WeightLabel::u(i));
  for (int i = 2; i <= b - 1; ++i) {
    out.push_back(WeightLabel::w(i));
    for (int j = i + 1; j <= b - 1; ++j) out.push_back(WeightLabel::ww(i, j));
  }
  return out;
}

std::vector<TwoRowTableau> standard_tableaux(int mu1, int mu2,
                                             const Composition& content) {
  if (mu1 < mu2 || mu2 < 0)
    throw std::invalid_argument("shape must be a two-row partition");
  const int n = static_cast<int>(content.size());
  if (content.weight() != mu1 + mu2) return {};

  std::vector<TwoRowTableau> out;
  // Choose the row-1 multiplicity of every letter; row 2 takes the rest.
  std::vector<int> take(n, 0);
  std::function<void(int, int)> rec = [&](int letter, int remaining) {
    if (letter == n) {
      if (remaining != 0) return;
      TwoRowTableau t;
      for (int k = 0; k < n; ++k) {
        t.row1.insert(t.row1.end(), take[k], k + 1);
        t.row2.insert(t.row2.end(), content[k] - take[k], k + 1);
      }
      if (t.is_standard()) out.push_back(t);
      return;
    }
    const int hi = std::min(content[letter], remaining);
    for (int c = 0; c <= hi; ++c) {
      take[letter] = c;
      rec(letter + 1, remaining - c);
    }
    take[letter] = 0;
  };
  rec(0, mu1);
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<std::vector<int>, std::vector<int>> tableau_monomial(
    const TwoRowTableau& t, int n) {
  std::vector<int> e1(n, 0), e2(n, 0);
  for (int x : t.row1) e1.at(x - 1)++;
  for (int x : t.row2) e2.at(x - 1)++;
  return {e1, e2};
}

}  // namespace hookext::combinatorics
