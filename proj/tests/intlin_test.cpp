#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "hookext/intlin.hpp"
#include "hookext/matrix.hpp"
#include "support.hpp"

using namespace hookext;
using namespace hookext::intlin;

namespace {

IntMatrix from_rows(const std::vector<std::vector<int>>& rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
  return m;
}

void check_chain(const std::vector<Int>& f) {
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    CHECK(f[i] >= 0);
    if (f[i] == 0) {
      CHECK(f[i + 1] == 0);
    } else {
      CHECK(f[i + 1] % f[i] == 0);
    }
  }
}

}  // namespace

TEST_SUITE("intlin") {

TEST_CASE("invariant factors of pinned matrices") {
  CHECK(snf(from_rows({{4, 0}, {0, 6}})).factors == std::vector<Int>{2, 12});
  CHECK(snf(IntMatrix::identity(4)).factors == std::vector<Int>{1, 1, 1, 1});
  CHECK(snf(from_rows({{-2, 0, 0, 4, -2}, {0, -2, -1, -1, -2}})).factors ==
        std::vector<Int>{1, 2});
  CHECK(snf(from_rows({{1, 2}, {3, 4}})).factors == std::vector<Int>{1, 2});
  CHECK(snf(from_rows({{2, 0, 0}, {0, 0, 5}})).factors == std::vector<Int>{1, 10});

  const IntMatrix zero(3, 5);
  const auto zf = snf(zero);
  CHECK(zf.factors == std::vector<Int>{0, 0, 0});
  CHECK(zf.rank == 0);
  CHECK(torsion(zf).trivial());

  const IntMatrix empty;
  CHECK(snf(empty).factors.empty());
}

TEST_CASE("determinantal divisors route") {
  CHECK(minors_invariants(from_rows({{2, 4}, {6, 8}})) == std::vector<Int>{2, 4});
  CHECK(minors_invariants(from_rows({{4, 0}, {0, 6}})) == std::vector<Int>{2, 12});
  CHECK(minors_invariants(IntMatrix(2, 3)) == std::vector<Int>{});
  CHECK_THROWS_AS(minors_invariants(IntMatrix(9, 9)), std::invalid_argument);
}

TEST_CASE("torsion keeps only the nontrivial finite factors") {
  SNFResult r;
  r.factors = {1, 2, 0};
  r.rank = 2;
  CHECK(torsion(r) == ExtGroup{{2}});
  CHECK(torsion(r).to_string() == "Z_2");

  SNFResult ones;
  ones.factors = {1, 1, 1, 0, 0};
  ones.rank = 3;
  CHECK(torsion(ones).trivial());
  CHECK(torsion(ones).to_string() == "0");

  SNFResult six;
  six.factors = {1, 1, 1, 6, 0, 0};
  six.rank = 4;
  CHECK(torsion(six) == ExtGroup{{6}});

  SNFResult mixed;
  mixed.factors = {1, 2, 6, 0};
  mixed.rank = 3;
  CHECK(torsion(mixed).to_string() == "Z_2 x Z_6");
}

TEST_CASE("exact determinants") {
  CHECK(determinant(from_rows({{1, 2}, {3, 4}})) == -2);
  CHECK(determinant(IntMatrix::identity(5)) == 1);
  CHECK(determinant(from_rows({{2, 4}, {1, 2}})) == 0);
  CHECK(determinant(from_rows({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}})) == -1);
  CHECK_THROWS_AS(determinant(IntMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("transforms reconstruct the input") {
  auto g = testsupport::rng(301);
  for (int round = 0; round < 40; ++round) {
    const std::size_t rows = std::size_t(testsupport::uniform(g, 1, 5));
    const std::size_t cols = std::size_t(testsupport::uniform(g, 1, 5));
    const IntMatrix a = testsupport::random_matrix(g, rows, cols, -9, 9);
    const auto r = snf(a, true);
    check_chain(r.factors);
    REQUIRE(r.U.has_value());
    REQUIRE(r.V.has_value());
    CHECK(abs_int(determinant(*r.U)) == 1);
    CHECK(abs_int(determinant(*r.V)) == 1);
    const IntMatrix d = r.U->mul(a).mul(*r.V);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        CHECK(d.at(i, j) == (i == j ? r.factors[i] : Int(0)));
  }
}

TEST_CASE("factors are invariant under unimodular disguises") {
  auto g = testsupport::rng(302);
  for (int round = 0; round < 40; ++round) {
    const std::size_t rows = std::size_t(testsupport::uniform(g, 2, 5));
    const std::size_t cols = std::size_t(testsupport::uniform(g, 2, 6));
    IntMatrix a = testsupport::random_matrix(g, rows, cols, -9, 9);
    const auto base = snf(a).factors;

    CHECK(snf(a.transposed()).factors == base);

    IntMatrix shuffled = a;
    shuffled.row_swap(0, rows - 1);
    shuffled.col_swap(0, cols - 1);
    shuffled.row_scale(std::size_t(testsupport::uniform(g, 0, int(rows) - 1)), -1);
    shuffled.col_addmul(1, 0, testsupport::uniform(g, -3, 3));
    CHECK(snf(shuffled).factors == base);

    CHECK(snf(a).nonzero_factors() == minors_invariants(a));
  }
}

TEST_CASE("group rendering and equality") {
  CHECK(ExtGroup{}.to_string() == "0");
  CHECK(ExtGroup{{2}} != ExtGroup{});
  CHECK(ExtGroup{{6}}.to_string() == "Z_6");
  CHECK(ExtGroup{{2}} == ExtGroup{{2}});
}

}  // TEST_SUITE
