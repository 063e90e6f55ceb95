#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "hookext/combinatorics.hpp"
#include "support.hpp"

using namespace hookext::combinatorics;

TEST_SUITE("combinatorics") {

TEST_CASE("hook parameters validate their domain") {
  CHECK_THROWS_AS(HookParams(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(HookParams(3, 1), std::invalid_argument);
  CHECK_THROWS_AS(HookParams(1, 4), std::invalid_argument);  // a+1 < b-1
  CHECK_NOTHROW(HookParams(2, 4));                           // boundary a+1 = b-1
  CHECK_NOTHROW(HookParams(3, 4));
}

TEST_CASE("derived sizes s, t and omega") {
  CHECK(HookParams(5, 4).s() == 8);
  CHECK(HookParams(5, 4).t() == 10);
  CHECK(HookParams(6, 5).s() == 21);
  CHECK(HookParams(6, 5).t() == 17);
  CHECK(HookParams(7, 6).s() == 44);
  CHECK(HookParams(7, 6).t() == 26);
  CHECK(HookParams(8, 7).s() == 80);
  CHECK(HookParams(8, 7).t() == 37);

  CHECK(HookParams(5, 4).omega() == 7);   // even b: a+2
  CHECK(HookParams(5, 5).omega() == 6);   // odd b: a+1
  CHECK(HookParams(3, 3).lambda() == std::vector<int>{3, 1, 1, 1});
  CHECK(HookParams(3, 3).mu() == std::vector<int>{4, 2});
}

TEST_CASE("row and column block sizes add up to s and t") {
  for (int b = 3; b <= 12; ++b) {
    const HookParams p(b + 1, b);
    CHECK(p1_weights(p).size() == std::size_t(b));
    int rows = 0;
    for (const auto& l : p2_row_labels(b)) rows += l.block_height(b);
    CHECK(rows == p.s());
    const int cols = 1 + (b - 1) * (b - 1);
    CHECK(cols == p.t());
  }
}

TEST_CASE("column weight family in order") {
  const HookParams p33(3, 3);
  const auto v33 = p1_weights(p33);
  REQUIRE(v33.size() == 3);
  CHECK(v33[0] == Composition{4, 1, 1});
  CHECK(v33[1] == Composition{3, 2, 1});
  CHECK(v33[2] == Composition{3, 1, 2});

  const HookParams p24(2, 4);
  const auto v24 = p1_weights(p24);
  REQUIRE(v24.size() == 4);
  CHECK(v24[0] == Composition{3, 1, 1, 1});
  CHECK(v24[1] == Composition{2, 2, 1, 1});
  CHECK(v24[2] == Composition{2, 1, 2, 1});
  CHECK(v24[3] == Composition{2, 1, 1, 2});

  for (const auto& v : v24) CHECK(v.weight() == 6);
}

TEST_CASE("row label family in order") {
  const auto r3 = p2_row_labels(3);
  REQUIRE(r3.size() == 2);
  CHECK(r3[0] == WeightLabel::u(2));
  CHECK(r3[1] == WeightLabel::w(2));

  const auto r4 = p2_row_labels(4);
  REQUIRE(r4.size() == 5);
  CHECK(r4[0] == WeightLabel::u(2));
  CHECK(r4[1] == WeightLabel::u(3));
  CHECK(r4[2] == WeightLabel::w(2));
  CHECK(r4[3] == WeightLabel::ww(2, 3));
  CHECK(r4[4] == WeightLabel::w(3));
}

TEST_CASE("label weights and rendering") {
  const HookParams p(4, 5);
  CHECK(WeightLabel::u(2).weight(p) == Composition{5, 2, 1, 1});
  CHECK(WeightLabel::u(4).weight(p) == Composition{5, 1, 1, 2});
  CHECK(WeightLabel::w(3).weight(p) == Composition{4, 1, 3, 1});
  CHECK(WeightLabel::ww(2, 4).weight(p) == Composition{4, 2, 1, 2});
  CHECK(WeightLabel::u(2).to_string() == "u(2)");
  CHECK(WeightLabel::w(3).to_string() == "w(3)");
  CHECK(WeightLabel::ww(2, 4).to_string() == "w(2,4)");
  // every row weight sums to the degree a+b
  for (const auto& l : p2_row_labels(5)) CHECK(l.weight(p).weight() == 9);
}

TEST_CASE("standard tableaux: pinned instances") {
  const auto one = standard_tableaux(4, 2, Composition{4, 1, 1});
  REQUIRE(one.size() == 1);
  CHECK(one[0].row1 == std::vector<int>{1, 1, 1, 1});
  CHECK(one[0].row2 == std::vector<int>{2, 3});

  const auto two = standard_tableaux(3, 2, Composition{2, 2, 1});
  REQUIRE(two.size() == 2);
  CHECK(two[0].row1 == std::vector<int>{1, 1, 2});
  CHECK(two[0].row2 == std::vector<int>{2, 3});
  CHECK(two[1].row1 == std::vector<int>{1, 1, 3});
  CHECK(two[1].row2 == std::vector<int>{2, 2});

  // content heavier than the first row leaves nothing
  CHECK(standard_tableaux(4, 2, Composition{5, 1}).empty());

  // all-distinct content of shape (4,2): hook length count 6!/(5*4*2*1*2*1)
  CHECK(standard_tableaux(4, 2, Composition{1, 1, 1, 1, 1, 1}).size() == 9);

  // shape (3,3), content (2,2,1,1): the two-column-strict fillings only
  CHECK(standard_tableaux(3, 3, Composition{2, 2, 1, 1}).size() == 2);
}

TEST_CASE("standard tableaux match brute-force enumeration") {
  auto g = testsupport::rng(101);
  for (int round = 0; round < 120; ++round) {
    const int mu2 = testsupport::uniform(g, 0, 4);
    const int mu1 = mu2 + testsupport::uniform(g, 0, 4);
    if (mu1 == 0) continue;
    const int letters = testsupport::uniform(g, 1, 5);
    const auto alpha = testsupport::random_composition(g, mu1 + mu2, letters);
    const auto list = standard_tableaux(mu1, mu2, alpha);
    CHECK(long(list.size()) == testsupport::brute_standard_count(mu1, mu2, alpha));
    for (const auto& t : list) {
      CHECK(t.is_standard());
      CHECK(t.content(letters) == alpha);
    }
    // ascending lexicographic order on the first row word
    for (std::size_t k = 1; k < list.size(); ++k) CHECK(list[k - 1].row1 < list[k].row1);
  }
}

TEST_CASE("tableau counts for the weight families") {
  for (int b = 3; b <= 6; ++b) {
    const HookParams p(b + 2, b);
    const int mu1 = p.a + 1, mu2 = p.b - 1;
    const auto vs = p1_weights(p);
    for (std::size_t i = 1; i < vs.size(); ++i)  // v_2..v_b
      CHECK(standard_tableaux(mu1, mu2, vs[i]).size() == std::size_t(b - 1));
    // u_1 = (a+2, 1^{b-2}) admits no standard tableau
    std::vector<int> u1(std::size_t(b - 1), 1);
    u1[0] = p.a + 2;
    CHECK(standard_tableaux(mu1, mu2, Composition(u1)).empty());
    for (const auto& l : p2_row_labels(b)) {
      const std::size_t want = l.kind == WeightLabel::Kind::U ? 1 : std::size_t(b - 2);
      CHECK(standard_tableaux(mu1, mu2, l.weight(p)).size() == want);
    }
  }
}

TEST_CASE("tableau exponent vectors") {
  TwoRowTableau t{{1, 1, 1, 1}, {2, 3}};
  const auto [e1, e2] = tableau_monomial(t, 3);
  CHECK(e1 == std::vector<int>{4, 0, 0});
  CHECK(e2 == std::vector<int>{0, 1, 1});

  TwoRowTableau s{{1, 1, 2}, {2, 3}};
  const auto [f1, f2] = tableau_monomial(s, 3);
  CHECK(f1 == std::vector<int>{2, 1, 0});
  CHECK(f2 == std::vector<int>{0, 1, 1});
}

}  // TEST_SUITE
