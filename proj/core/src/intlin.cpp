#include "hookext/intlin.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace hookext::intlin {

std::string ExtGroup::to_string() const {
  if (orders.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (i) s += " x ";
    s += "Z_" + orders[i].str();
  }
  return s;
}

namespace {

// Position of a minimal-absolute-value nonzero entry in the trailing
// submatrix starting at (k, k), or nullopt if that submatrix is zero.
std::optional<std::pair<std::size_t, std::size_t>> min_abs_pivot(
    const IntMatrix& d, std::size_t k) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Int best_abs = 0;
  for (std::size_t i = k; i < d.rows(); ++i)
    for (std::size_t j = k; j < d.cols(); ++j) {
      const Int& x = d.at(i, j);
      if (x == 0) continue;
      Int ax = abs_int(x);
      if (!best || ax < best_abs) {
        best = {{i, j}};
        best_abs = ax;
        if (best_abs == 1) return best;
      }
    }
  return best;
}

}  // namespace

SNFResult snf(const IntMatrix& a, bool with_transforms) {
  const std::size_t s = a.rows(), t = a.cols();
  IntMatrix d = a;
  IntMatrix u, v;
  if (with_transforms) {
    u = IntMatrix::identity(s);
    v = IntMatrix::identity(t);
  }

  auto row_swap = [&](std::size_t i, std::size_t k) {
    d.row_swap(i, k);
    if (with_transforms) u.row_swap(i, k);
  };
  auto col_swap = [&](std::size_t j, std::size_t l) {
    d.col_swap(j, l);
    if (with_transforms) v.col_swap(j, l);
  };
  auto row_addmul = [&](std::size_t i, std::size_t k, const Int& c) {
    d.row_addmul(i, k, c);
    if (with_transforms) u.row_addmul(i, k, c);
  };
  auto col_addmul = [&](std::size_t j, std::size_t l, const Int& c) {
    d.col_addmul(j, l, c);
    if (with_transforms) v.col_addmul(j, l, c);
  };
  auto row_negate = [&](std::size_t i) {
    d.row_scale(i, -1);
    if (with_transforms) u.row_scale(i, -1);
  };

  const std::size_t n = std::min(s, t);
  std::size_t k = 0;
  for (; k < n; ++k) {
    auto piv = min_abs_pivot(d, k);
    if (!piv) break;

    for (;;) {
      row_swap(piv->first, k);
      col_swap(piv->second, k);

      // Euclidean sweep of column k and row k against the pivot.
      for (std::size_t i = k + 1; i < s; ++i) {
        if (d.at(i, k) == 0) continue;
        Int q = d.at(i, k) / d.at(k, k);
        if (q != 0) row_addmul(i, k, -q);
      }
      for (std::size_t j = k + 1; j < t; ++j) {
        if (d.at(k, j) == 0) continue;
        Int q = d.at(k, j) / d.at(k, k);
        if (q != 0) col_addmul(j, k, -q);
      }

      bool clean = true;
      for (std::size_t i = k + 1; i < s && clean; ++i)
        if (d.at(i, k) != 0) clean = false;
      for (std::size_t j = k + 1; j < t && clean; ++j)
        if (d.at(k, j) != 0) clean = false;
      if (!clean) {
        // A remainder smaller than the pivot appeared; re-pivot on it.
        piv = min_abs_pivot(d, k);
        continue;
      }

      // Pivot must divide every remaining entry for the chain to hold.
      bool divides = true;
      for (std::size_t i = k + 1; i < s && divides; ++i)
        for (std::size_t j = k + 1; j < t && divides; ++j)
          if (d.at(i, j) % d.at(k, k) != 0) {
            row_addmul(k, i, 1);
            divides = false;
          }
      if (divides) break;
      piv = min_abs_pivot(d, k);
    }

    if (d.at(k, k) < 0) row_negate(k);
  }

  SNFResult r;
  r.rank = k;
  r.factors.resize(n);
  for (std::size_t i = 0; i < k; ++i) r.factors[i] = d.at(i, i);
  if (with_transforms) {
    r.U = std::move(u);
    r.V = std::move(v);
  }
  return r;
}

Int determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t pr = k + 1;
      while (pr < n && m.at(pr, k) == 0) ++pr;
      if (pr == n) return 0;
      m.row_swap(k, pr);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        m.at(i, j) = num / prev;  // exact by Bareiss
      }
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

namespace {

void combinations(std::size_t n, std::size_t k,
                  const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (idx[i] != i + n - k) break;
      if (i == 0) return;
    }
    if (idx[i] == i + n - k) return;
    ++idx[i];
    for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::vector<Int> minors_invariants(const IntMatrix& a, std::size_t cap) {
  const std::size_t n = std::min(a.rows(), a.cols());
  if (n > cap)
    throw std::invalid_argument("minors_invariants: matrix exceeds minor cap");
  std::vector<Int> deltas;  // deltas[i] = gcd of (i+1)x(i+1) minors
  for (std::size_t k = 1; k <= n; ++k) {
    Int g = 0;
    combinations(a.rows(), k, [&](const std::vector<std::size_t>& ris) {
      combinations(a.cols(), k, [&](const std::vector<std::size_t>& cis) {
        if (g == 1) return;
        g = gcd_int(g, determinant(a.submatrix(ris, cis)));
      });
    });
    deltas.push_back(g);
    if (g == 0) break;  // rank < k, all larger minors vanish too
  }
  std::vector<Int> d;  // a vanishing delta ends the chain: no zero padding
  Int prev = 1;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (deltas[i] == 0) break;
    d.push_back(deltas[i] / prev);
    prev = deltas[i];
  }
  return d;
}

ExtGroup torsion(const SNFResult& r) {
  ExtGroup g;
  for (std::size_t i = 0; i < r.rank; ++i)
    if (r.factors[i] > 1) g.orders.push_back(r.factors[i]);
  return g;
}

}  // namespace hookext::intlin
