#include "doctest.h"

#include <vector>

#include "hookext/dpa.hpp"
#include "hookext/int.hpp"
#include "support.hpp"

using namespace hookext;
using namespace hookext::dpa;
using testsupport::Rat;

TEST_SUITE("dpa") {

TEST_CASE("product coefficients are multiplied binomials") {
  auto [c1, m1] = mono_product({2}, {3});
  CHECK(c1 == 10);
  CHECK(m1 == DividedMonomial{5});

  auto [c2, m2] = mono_product({1, 1}, {0, 2});
  CHECK(c2 == 3);
  CHECK(m2 == DividedMonomial{1, 3});

  auto [c3, m3] = mono_product({3, 0, 4}, {0, 0, 0});
  CHECK(c3 == 1);
  CHECK(m3 == DividedMonomial{3, 0, 4});
}

TEST_CASE("product matches the factorial-normalization model") {
  auto g = testsupport::rng(201);
  for (int round = 0; round < 100; ++round) {
    const int letters = testsupport::uniform(g, 1, 6);
    const auto x = testsupport::random_monomial(g, letters, testsupport::uniform(g, 0, 8));
    const auto y = testsupport::random_monomial(g, letters, testsupport::uniform(g, 0, 8));
    const auto [c, m] = mono_product(x, y);
    CHECK(Rat(c) * testsupport::model_coeff(m) ==
          testsupport::model_coeff(x) * testsupport::model_coeff(y));
  }
}

TEST_CASE("product is commutative and associative with coefficients") {
  auto g = testsupport::rng(202);
  for (int round = 0; round < 100; ++round) {
    const int letters = testsupport::uniform(g, 1, 6);
    const auto x = testsupport::random_monomial(g, letters, testsupport::uniform(g, 0, 8));
    const auto y = testsupport::random_monomial(g, letters, testsupport::uniform(g, 0, 8));
    const auto z = testsupport::random_monomial(g, letters, testsupport::uniform(g, 0, 8));

    const auto xy = mono_product(x, y);
    const auto yx = mono_product(y, x);
    CHECK(xy == yx);

    const auto xy_z = mono_product(xy.second, z);
    const auto yz = mono_product(y, z);
    const auto x_yz = mono_product(x, yz.second);
    CHECK(xy.first * xy_z.first == yz.first * x_yz.first);
    CHECK(xy_z.second == x_yz.second);
  }
}

TEST_CASE("comultiplication components: pinned instances") {
  // one letter, split 3 = 1 + 2
  DPAElement d = delta_split({3}, 1, 2);
  DPAElement want;
  want.add_term({{1}, {2}}, 1);
  CHECK(d == want);

  // two letters
  DPAElement d2 = delta_split({2, 1}, 1, 2);
  DPAElement want2;
  want2.add_term({{1, 0}, {1, 1}}, 1);
  want2.add_term({{0, 1}, {2, 0}}, 1);
  CHECK(d2 == want2);

  // counit side: p = 0 keeps everything in the right tensor slot
  DPAElement d0 = delta_split({2, 1}, 0, 3);
  DPAElement want0;
  want0.add_term({{0, 0}, {2, 1}}, 1);
  CHECK(d0 == want0);
}

TEST_CASE("comultiplication is coassociative") {
  auto g = testsupport::rng(203);
  for (int round = 0; round < 60; ++round) {
    const int letters = testsupport::uniform(g, 1, 4);
    const int p = testsupport::uniform(g, 0, 3);
    const int q = testsupport::uniform(g, 0, 3);
    const int r = testsupport::uniform(g, 0, 3);
    const auto x = testsupport::random_monomial(g, letters, p + q + r);
    const DPAElement e = DPAElement::monomial({x});
    // split off r, then refine the left factor
    const DPAElement left = split_factor(split_factor(e, 0, p + q, r), 0, p, q);
    // split off p, then refine the right factor
    const DPAElement right = split_factor(split_factor(e, 0, p, q + r), 1, q, r);
    CHECK(left == right);
  }
}

TEST_CASE("multiplying a split recovers the binomial multiple") {
  auto g = testsupport::rng(204);
  for (int round = 0; round < 60; ++round) {
    const int letters = testsupport::uniform(g, 1, 5);
    const int p = testsupport::uniform(g, 0, 4);
    const int q = testsupport::uniform(g, 0, 4);
    const auto x = testsupport::random_monomial(g, letters, p + q);
    const DPAElement merged = merge_factors(delta_split(x, p, q), 0, 1);
    CHECK(merged == binomial(p + q, p) * DPAElement::monomial({x}));
  }
}

TEST_CASE("canonical monomial of a composition") {
  const auto t = canonical_monomial(hookext::combinatorics::Composition{4, 1, 1});
  REQUIRE(t.size() == 3);
  CHECK(t[0] == DividedMonomial{4, 0, 0});
  CHECK(t[1] == DividedMonomial{0, 1, 0});
  CHECK(t[2] == DividedMonomial{0, 0, 1});
  CHECK(weight(t) == hookext::combinatorics::Composition{4, 1, 1});
  CHECK(profile(t) == std::vector<int>{4, 1, 1});

  const auto z = canonical_monomial(hookext::combinatorics::Composition{0, 2});
  REQUIRE(z.size() == 2);
  CHECK(z[0] == DividedMonomial{0, 0});
  CHECK(z[1] == DividedMonomial{0, 2});
}

TEST_CASE("factor surgery on tensors") {
  // splitting the doubled letter of 1^(2) (x) 2^(2) gives 2 (x) 2 once
  const DPAElement e = DPAElement::monomial({{2, 0}, {0, 2}});
  const DPAElement split = split_factor(e, 1, 1, 1);
  DPAElement want;
  want.add_term({{2, 0}, {0, 1}, {0, 1}}, 1);
  CHECK(split == want);

  // merging factors with disjoint support costs nothing
  const DPAElement m = merge_factors(DPAElement::monomial({{2, 0}, {0, 1}}), 0, 1);
  CHECK(m == DPAElement::monomial({{2, 1}}));

  // merging equal letters picks up the binomial
  const DPAElement m2 = merge_factors(DPAElement::monomial({{2}, {1}}), 0, 1);
  CHECK(m2 == Int(3) * DPAElement::monomial({{3}}));

  // identity local map leaves the element alone
  const DPAElement id = apply_at(split, {0, 1},
                                 [](const TensorMonomial& t) { return DPAElement::monomial(t); });
  CHECK(id == split);
}

TEST_CASE("linear combinations stay sorted and homogeneous") {
  DPAElement e;
  e.add_term({{1, 1}, {0, 1}}, 2);
  e.add_term({{0, 2}, {1, 0}}, -1);
  e.add_term({{1, 1}, {0, 1}}, -2);  // cancels the first
  CHECK(e.term_count() == 1);
  e *= 3;
  CHECK(e.terms().begin()->second == -3);
  e += e;
  CHECK(e.terms().begin()->second == -6);
  e.add_term({{0, 2}, {1, 0}}, 6);
  CHECK(e.is_zero());
}

}  // TEST_SUITE
