#include "hookext/weyl.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <stdexcept>

#include "hookext/intlin.hpp"

namespace hookext::weyl {

namespace {

// All monomials z <= alpha with |z| = d, as exponent vectors over the
// alphabet of alpha.
std::vector<dpa::DividedMonomial> bounded_monomials(
    const combinatorics::Composition& alpha, int d) {
  std::vector<dpa::DividedMonomial> out;
  const std::size_t n = alpha.size();
  dpa::DividedMonomial z(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int rem) {
    if (k == n) {
      if (rem == 0) out.push_back(z);
      return;
    }
    const int hi = std::min(alpha[k], rem);
    for (int c = 0; c <= hi; ++c) {
      z[k] = c;
      rec(k + 1, rem - c);
    }
    z[k] = 0;
  };
  rec(0, d);
  return out;
}

std::vector<dpa::TensorMonomial> pair_basis(int d1, int d2,
                                            const combinatorics::Composition& alpha) {
  std::vector<dpa::TensorMonomial> out;
  if (d1 < 0 || d2 < 0 || alpha.weight() != d1 + d2) return out;
  const std::size_t n = alpha.size();
  for (auto& z : bounded_monomials(alpha, d1)) {
    dpa::DividedMonomial w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = alpha[k] - z[k];
    out.push_back(dpa::TensorMonomial{z, w});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<dpa::DPAElement> box_relations(int mu1, int mu2,
                                           const combinatorics::Composition& alpha) {
  // Transfer maps (1 (x) m) o (Delta_{mu1,l} (x) 1) for every l >= 1.  The
  // single-box family l = 1 does not span the relation lattice over the
  // integers: on one letter it reaches x^(p) (x) x^(q) with coefficient q
  // only, while l = 2 reaches it with C(q,2), which is not an integer
  // multiple of q.  Dropping the higher transfers leaves 2-torsion in the
  // quotient, which the freeness assertion below would reject.
  std::vector<dpa::DPAElement> rels;
  const std::size_t n = alpha.size();
  for (int l = 1; l <= mu2; ++l) {
    for (const auto& gen : pair_basis(mu1 + l, mu2 - l, alpha)) {
      const auto& z = gen[0];
      const auto& w = gen[1];
      dpa::DPAElement rel;
      // Every y <= z with |y| = l moves from the first factor to the second;
      // the divided-power multiplication contributes prod_k C(w_k+y_k, y_k).
      dpa::DividedMonomial y(n, 0);
      std::function<void(std::size_t, int)> rec = [&](std::size_t k, int rem) {
        if (k == n) {
          if (rem != 0) return;
          dpa::DividedMonomial zz = z, ww = w;
          Int coef = 1;
          for (std::size_t q = 0; q < n; ++q) {
            zz[q] -= y[q];
            ww[q] += y[q];
            coef *= binomial(w[q] + y[q], y[q]);
          }
          rel.add_term(dpa::TensorMonomial{zz, ww}, coef);
          return;
        }
        const int hi = std::min(z[k], rem);
        for (int c = 0; c <= hi; ++c) {
          y[k] = c;
          rec(k + 1, rem - c);
        }
        y[k] = 0;
      };
      rec(0, l);
      if (!rel.is_zero()) rels.push_back(rel);
    }
  }
  return rels;
}

WeylWeightSpace::WeylWeightSpace(int mu1, int mu2, combinatorics::Composition alpha,
                                 const IntMatrix* cached_reduction)
    : mu1_(mu1), mu2_(mu2), alpha_(std::move(alpha)) {
  if (mu1_ < mu2_ || mu2_ < 0)
    throw std::invalid_argument("weight space needs a two-row partition shape");

  basis_ = pair_basis(mu1_, mu2_, alpha_);
  for (std::size_t i = 0; i < basis_.size(); ++i) index_[basis_[i]] = i;
  standard_ = combinatorics::standard_tableaux(mu1_, mu2_, alpha_);

  const std::size_t N = basis_.size();
  const std::size_t k = standard_.size();
  const auto rels = box_relations(mu1_, mu2_, alpha_);

  // Relation matrix G, one column per generator.
  IntMatrix G(N, rels.size());
  for (std::size_t c = 0; c < rels.size(); ++c)
    for (const auto& [t, coeff] : rels[c].terms()) {
      auto it = index_.find(t);
      if (it == index_.end())
        throw std::logic_error("box relation leaves the weight space");
      G.at(it->second, c) = coeff;
    }

  IntMatrix X(N, k);
  for (std::size_t c = 0; c < k; ++c) {
    auto it = index_.find(tableau_tensor(standard_[c]));
    if (it == index_.end())
      throw std::logic_error("standard tableau monomial missing from basis");
    X.at(it->second, c) = 1;
  }

  // A cached projection is accepted only if it annihilates every relation
  // and fixes every standard image; those two properties alone make all
  // straighten() answers correct, so a stale file cannot poison results.
  if (cached_reduction && cached_reduction->rows() == k &&
      cached_reduction->cols() == N) {
    if (cached_reduction->mul(G).is_zero() &&
        cached_reduction->mul(X) == IntMatrix::identity(k)) {
      reduction_ = *cached_reduction;
      return;
    }
  }

  auto snf = intlin::snf(G, true);
  for (std::size_t i = 0; i < snf.rank; ++i)
    if (snf.factors[i] != 1)
      throw std::logic_error(
          "weight space quotient is not free: invariant factor " +
          snf.factors[i].str());
  if (N - snf.rank != k)
    throw std::logic_error(
        "weight space rank mismatch: quotient rank " +
        std::to_string(N - snf.rank) + ", standard tableaux " + std::to_string(k));

  // In U-coordinates the quotient map is projection onto the last k rows.
  const IntMatrix& U = *snf.U;
  IntMatrix T(k, k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) {
      Int acc = 0;
      for (std::size_t j = 0; j < N; ++j) acc += U.at(snf.rank + r, j) * X.at(j, c);
      T.at(r, c) = acc;
    }
  auto tsnf = intlin::snf(T, true);
  if (tsnf.rank != k)
    throw std::logic_error("standard tableau images do not span the quotient");
  for (std::size_t i = 0; i < k; ++i)
    if (tsnf.factors[i] != 1)
      throw std::logic_error("standard tableau images are not a lattice basis");
  // U_T * T * V_T = I  =>  T^{-1} = V_T * U_T.
  IntMatrix Tinv = tsnf.V->mul(*tsnf.U);

  IntMatrix Ulow(k, N);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t j = 0; j < N; ++j) Ulow.at(r, j) = U.at(snf.rank + r, j);
  reduction_ = Tinv.mul(Ulow);

  // The projection must fix every standard image.
  IntMatrix PX = reduction_.mul(X);
  if (PX != IntMatrix::identity(k))
    throw std::logic_error("straightening projection failed self-check");
}

dpa::TensorMonomial WeylWeightSpace::tableau_tensor(
    const combinatorics::TwoRowTableau& t) const {
  auto [e1, e2] = combinatorics::tableau_monomial(t, static_cast<int>(alpha_.size()));
  return dpa::TensorMonomial{e1, e2};
}

std::vector<Int> WeylWeightSpace::monomial_coords(const dpa::DPAElement& e) const {
  std::vector<Int> v(basis_.size());
  for (const auto& [t, c] : e.terms()) {
    auto it = index_.find(t);
    if (it == index_.end())
      throw std::invalid_argument("element outside this weight space");
    v[it->second] = c;
  }
  return v;
}

std::vector<Int> WeylWeightSpace::straighten(const dpa::DPAElement& e) const {
  const auto v = monomial_coords(e);
  const std::size_t k = standard_.size();
  std::vector<Int> out(k);
  for (std::size_t r = 0; r < k; ++r) {
    Int acc = 0;
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      if (v[j] == 0) continue;
      acc += reduction_.at(r, j) * v[j];
    }
    out[r] = acc;
  }
  return out;
}

namespace {

std::string cache_key(int mu1, int mu2, const combinatorics::Composition& alpha) {
  std::string k = "mu" + std::to_string(mu1) + "_" + std::to_string(mu2) + "__a";
  for (int p : alpha.normalized().parts) k += "_" + std::to_string(p);
  return k;
}

}  // namespace

std::shared_ptr<const WeylWeightSpace> WeightSpaceCache::get(
    int mu1, int mu2, const combinatorics::Composition& alpha) {
  const std::string key = cache_key(mu1, mu2, alpha);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = map_.find(key);
    if (it != map_.end()) return it->second;
  }

  // Build outside the lock; duplicate builds are harmless and rare.
  namespace fs = std::filesystem;
  const fs::path file =
      dir_.empty() ? fs::path() : fs::path(dir_) / (key + ".json");

  std::shared_ptr<const WeylWeightSpace> ws;
  if (!dir_.empty() && fs::exists(file)) {
    try {
      std::ifstream in(file);
      nlohmann::json j;
      in >> j;
      const auto rows = j.at("rows").get<std::size_t>();
      const auto cols = j.at("cols").get<std::size_t>();
      IntMatrix p(rows, cols);
      const auto& ent = j.at("reduction");
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t c = 0; c < cols; ++c)
          p.at(i, c) = Int(ent.at(i * cols + c).get<std::string>());
      // The constructor re-validates the cached projection and silently
      // recomputes if the file is stale.
      ws = std::make_shared<WeylWeightSpace>(mu1, mu2, alpha, &p);
    } catch (const std::logic_error&) {
      throw;
    } catch (...) {
      ws.reset();  // unreadable cache file: rebuild below
    }
  }
  if (!ws) ws = std::make_shared<WeylWeightSpace>(mu1, mu2, alpha);

  if (!dir_.empty()) {
    try {
      std::error_code ec;
      fs::create_directories(dir_, ec);
      nlohmann::json j;
      j["mu"] = {mu1, mu2};
      j["alpha"] = alpha.normalized().parts;
      j["rows"] = ws->reduction().rows();
      j["cols"] = ws->reduction().cols();
      std::vector<std::string> ent;
      ent.reserve(ws->reduction().rows() * ws->reduction().cols());
      for (std::size_t i = 0; i < ws->reduction().rows(); ++i)
        for (std::size_t c = 0; c < ws->reduction().cols(); ++c)
          ent.push_back(ws->reduction().at(i, c).str());
      j["reduction"] = ent;
      std::ofstream out(file);
      out << j.dump() << "\n";
    } catch (...) {
      // cache writes are best-effort
    }
  }

  std::lock_guard<std::mutex> lk(mu_);
  auto [it, inserted] = map_.emplace(key, std::move(ws));
  return it->second;
}

}  // namespace hookext::weyl
