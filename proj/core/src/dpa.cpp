#include "hookext/dpa.hpp"

#include <stdexcept>

namespace hookext::dpa {

int degree(const DividedMonomial& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

std::vector<int> profile(const TensorMonomial& t) {
  std::vector<int> p;
  p.reserve(t.size());
  for (const auto& f : t) p.push_back(degree(f));
  return p;
}

combinatorics::Composition weight(const TensorMonomial& t) {
  std::vector<int> w;
  for (const auto& f : t) {
    if (w.size() < f.size()) w.resize(f.size(), 0);
    for (std::size_t k = 0; k < f.size(); ++k) w[k] += f[k];
  }
  return combinatorics::Composition(std::move(w));
}

DPAElement DPAElement::monomial(TensorMonomial t, Int c) {
  DPAElement e;
  e.add_term(t, c);
  return e;
}

void DPAElement::add_term(const TensorMonomial& t, const Int& c) {
  if (c == 0) return;
  auto it = terms_.find(t);
  if (it == terms_.end()) {
    terms_.emplace(t, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

DPAElement& DPAElement::operator+=(const DPAElement& o) {
  for (const auto& [t, c] : o.terms_) add_term(t, c);
  return *this;
}

DPAElement& DPAElement::operator*=(const Int& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [t, v] : terms_) v *= c;
  return *this;
}

std::string DPAElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [t, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += c.str();
    for (const auto& f : t) {
      s += "(";
      for (std::size_t k = 0; k < f.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(f[k]);
      }
      s += ")";
    }
  }
  return s;
}

std::pair<Int, DividedMonomial> mono_product(const DividedMonomial& x,
                                             const DividedMonomial& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("mono_product: alphabet mismatch");
  Int c = 1;
  DividedMonomial z(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    z[k] = x[k] + y[k];
    c *= binomial(z[k], x[k]);
  }
  return {c, z};
}

DPAElement delta_split(const DividedMonomial& x, int p, int q) {
  if (p < 0 || q < 0 || degree(x) != p + q)
    throw std::invalid_argument("delta_split: degrees must satisfy |x| = p + q");
  DPAElement out;
  DividedMonomial u(x.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int rem) {
    if (k == x.size()) {
      if (rem != 0) return;
      DividedMonomial v(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) v[i] = x[i] - u[i];
      out.add_term(TensorMonomial{u, v}, 1);
      return;
    }
    const int hi = std::min(x[k], rem);
    for (int c = 0; c <= hi; ++c) {
      u[k] = c;
      rec(k + 1, rem - c);
    }
    u[k] = 0;
  };
  rec(0, p);
  return out;
}

TensorMonomial canonical_monomial(const combinatorics::Composition& alpha) {
  const std::size_t n = alpha.size();
  TensorMonomial t(n, DividedMonomial(n, 0));
  for (std::size_t k = 0; k < n; ++k) t[k][k] = alpha[k];
  return t;
}

DPAElement apply_at(const DPAElement& e, const std::vector<std::size_t>& positions,
                    const std::function<DPAElement(const TensorMonomial&)>& local) {
  if (positions.empty()) throw std::invalid_argument("apply_at: empty selection");
  DPAElement out;
  for (const auto& [t, c] : e.terms()) {
    TensorMonomial selected;
    selected.reserve(positions.size());
    for (std::size_t p : positions) selected.push_back(t.at(p));
    const DPAElement image = local(selected);
    for (const auto& [img, ic] : image.terms()) {
      TensorMonomial nt;
      nt.reserve(t.size() - positions.size() + img.size());
      for (std::size_t k = 0; k < t.size(); ++k) {
        if (k == positions.front()) {
          nt.insert(nt.end(), img.begin(), img.end());
          continue;
        }
        bool drop = false;
        for (std::size_t p : positions)
          if (p == k) { drop = true; break; }
        if (!drop) nt.push_back(t[k]);
      }
      out.add_term(nt, c * ic);
    }
  }
  return out;
}

DPAElement merge_factors(const DPAElement& e, std::size_t dst, std::size_t src) {
  if (dst == src) throw std::invalid_argument("merge_factors: dst == src");
  // Keep dst's slot: select (dst, src) so the image lands at dst.
  return apply_at(e, {dst, src}, [](const TensorMonomial& pair_) {
    auto [c, m] = mono_product(pair_.at(0), pair_.at(1));
    return DPAElement::monomial(TensorMonomial{m}, c);
  });
}

DPAElement split_factor(const DPAElement& e, std::size_t pos, int p, int q) {
  return apply_at(e, {pos}, [p, q](const TensorMonomial& one) {
    return delta_split(one.at(0), p, q);
  });
}

}  // namespace hookext::dpa
