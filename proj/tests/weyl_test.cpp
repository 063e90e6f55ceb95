#include "doctest.h"

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <vector>

#include "hookext/combinatorics.hpp"
#include "hookext/dpa.hpp"
#include "hookext/weyl.hpp"
#include "support.hpp"

using namespace hookext;
using namespace hookext::weyl;
using combinatorics::Composition;
using combinatorics::HookParams;
using combinatorics::TwoRowTableau;
using combinatorics::WeightLabel;

namespace {

// Tensor z (x) w from two exponent vectors.
dpa::DPAElement pair_monomial(const std::vector<int>& z, const std::vector<int>& w) {
  return dpa::DPAElement::monomial({z, w});
}

}  // namespace

TEST_SUITE("weyl") {

TEST_CASE("ranks of pinned weight spaces") {
  CHECK(weight_space(4, 2, Composition{4, 1, 1}).rank() == 1);
  CHECK(weight_space(3, 2, Composition{2, 2, 1}).rank() == 2);
  CHECK(weight_space(1, 1, Composition{1, 1}).rank() == 1);
  CHECK(weight_space(1, 1, Composition{2, 0}).rank() == 0);
  // content heavier than row one: no tableau, zero module
  CHECK(weight_space(4, 2, Composition{5, 1}).rank() == 0);
}

TEST_CASE("single-letter spaces need the deep transfer relations") {
  // (D_2 (x) D_2) on one letter: the only monomial must die in the quotient,
  // and it takes the degree-2 transfer to kill it with a unit coefficient.
  const auto ws = weight_space(2, 2, Composition{4});
  CHECK(ws.rank() == 0);
  CHECK(ws.basis().size() == 1);
  CHECK(weight_space(2, 2, Composition{3, 1}).rank() == 0);
  CHECK(weight_space(2, 2, Composition{2, 2}).rank() == 1);
  CHECK(weight_space(3, 2, Composition{5}).rank() == 0);
}

TEST_CASE("standard tableau classes straighten to unit vectors") {
  const auto ws = weight_space(3, 2, Composition{2, 2, 1});
  REQUIRE(ws.rank() == 2);
  for (std::size_t k = 0; k < ws.rank(); ++k) {
    const auto coords = ws.straighten(
        dpa::DPAElement::monomial(ws.tableau_tensor(ws.standard()[k])));
    for (std::size_t j = 0; j < coords.size(); ++j)
      CHECK(coords[j] == (j == k ? 1 : 0));
  }
}

TEST_CASE("straightening a doubled-column violation: pinned instances") {
  // shape (3,3), content (3,2,1): one standard tableau, rows 111 / 223
  const auto ws = weight_space(3, 3, Composition{3, 2, 1});
  REQUIRE(ws.rank() == 1);
  CHECK(ws.standard()[0].row1 == std::vector<int>{1, 1, 1});
  CHECK(ws.standard()[0].row2 == std::vector<int>{2, 2, 3});

  // 1^(2)2 (x) 123 collapses onto the standard class with coefficient -2
  CHECK(ws.straighten(pair_monomial({2, 1, 0}, {1, 1, 1})) == std::vector<Int>{-2});
  // 1^(2)3 (x) 12^(2) collapses with coefficient -1
  CHECK(ws.straighten(pair_monomial({2, 0, 1}, {1, 2, 0})) == std::vector<Int>{-1});
}

TEST_CASE("the non-standard single-swap classes reduce with -1 / -2") {
  // For the content families with one doubled letter i, the space is rank
  // one; moving any letter l >= 2 up into row one costs -1, except moving
  // the doubled letter itself, which costs -2.
  for (const auto [a, b] : std::vector<std::pair<int, int>>{{2, 4}, {3, 5}, {4, 6}}) {
    const HookParams p(a, b);
    const int n = b - 1;
    for (int i = 2; i <= b - 1; ++i) {
      const Composition ui = WeightLabel::u(i).weight(p);
      const auto ws = weight_space(a + 1, b - 1, ui);
      REQUIRE(ws.rank() == 1);
      // the unique standard tableau: all ones up, everything else down
      CHECK(ws.standard()[0].row1 == std::vector<int>(std::size_t(a + 1), 1));

      for (int l = 2; l <= b - 1; ++l) {
        std::vector<int> z(std::size_t(n), 0), w(std::size_t(n), 0);
        z[0] = a;
        z[std::size_t(l - 1)] += 1;
        for (int k = 2; k <= n; ++k) w[std::size_t(k - 1)] = 1;
        w[std::size_t(i - 1)] += 1;
        if (l == i) {
          w[0] = 1;  // row two keeps one copy of every letter incl. 1
          w[std::size_t(i - 1)] = 1;
        } else {
          w[std::size_t(l - 1)] = 0;
          w[0] = 1;
        }
        const Int want = l == i ? -2 : -1;
        CHECK(ws.straighten(pair_monomial(z, w)) == std::vector<Int>{want});
      }
    }
  }
}

TEST_CASE("straighten is linear and fixes representatives") {
  const auto ws = weight_space(3, 2, Composition{2, 2, 1});
  REQUIRE(ws.rank() == 2);
  auto g = testsupport::rng(401);
  for (int round = 0; round < 25; ++round) {
    const Int c0 = testsupport::uniform(g, -9, 9);
    const Int c1 = testsupport::uniform(g, -9, 9);
    dpa::DPAElement e;
    e += c0 * dpa::DPAElement::monomial(ws.tableau_tensor(ws.standard()[0]));
    e += c1 * dpa::DPAElement::monomial(ws.tableau_tensor(ws.standard()[1]));
    CHECK(ws.straighten(e) == std::vector<Int>{c0, c1});
  }
  // additivity on arbitrary (possibly non-standard) monomials
  const auto x = pair_monomial({2, 1, 0}, {0, 1, 1});
  const auto y = pair_monomial({1, 2, 0}, {1, 0, 1});
  const auto sx = ws.straighten(x);
  const auto sy = ws.straighten(y);
  const auto sxy = ws.straighten(x + y);
  for (std::size_t k = 0; k < ws.rank(); ++k) CHECK(sxy[k] == sx[k] + sy[k]);
}

TEST_CASE("rank equals the brute-force tableau count on random instances") {
  auto g = testsupport::rng(402);
  for (int round = 0; round < 20; ++round) {
    const int mu2 = testsupport::uniform(g, 1, 4);
    const int mu1 = testsupport::uniform(g, mu2, 6);
    const int letters = testsupport::uniform(g, 1, 5);
    const auto alpha = testsupport::random_composition(g, mu1 + mu2, letters);
    const auto ws = weight_space(mu1, mu2, alpha);
    CHECK(long(ws.rank()) == testsupport::brute_standard_count(mu1, mu2, alpha));
  }
}

TEST_CASE("disk cache round trip preserves the reduction") {
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / ("hookext-weyl-cache-" + std::to_string(::getpid()));
  fs::create_directories(dir);

  const Composition alpha{3, 2, 1};
  std::vector<Int> first, second;
  {
    WeightSpaceCache cache(dir.string());
    const auto ws = cache.get(3, 3, alpha);
    first = ws->straighten(pair_monomial({2, 1, 0}, {1, 1, 1}));
  }
  {
    WeightSpaceCache cache(dir.string());  // fresh object, warm directory
    const auto ws = cache.get(3, 3, alpha);
    second = ws->straighten(pair_monomial({2, 1, 0}, {1, 1, 1}));
    CHECK(ws->rank() == 1);
  }
  CHECK(first == second);
  CHECK(first == std::vector<Int>{-2});
  fs::remove_all(dir);
}

}  // TEST_SUITE
