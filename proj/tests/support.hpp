#pragma once

// Shared helpers for the test binaries: seeded RNG plumbing, random data
// generators, the factorial-normalization model for divided powers, and a
// brute-force standard-tableau enumerator independent of the library's.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <random>
#include <vector>

#include "hookext/combinatorics.hpp"
#include "hookext/dpa.hpp"
#include "hookext/int.hpp"
#include "hookext/matrix.hpp"

namespace testsupport {

// Global base seed, overridable with --seed on the test binaries.
extern std::uint64_t seed;

// Independent stream per call site; mixing with a salt keeps suites that
// run in any order reproducible individually.
inline std::mt19937_64 rng(std::uint64_t salt) {
  return std::mt19937_64(seed ^ (salt * 0x9e3779b97f4a7c15ull));
}

inline int uniform(std::mt19937_64& g, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(g);
}

inline hookext::IntMatrix random_matrix(std::mt19937_64& g, std::size_t rows,
                                        std::size_t cols, int lo, int hi) {
  hookext::IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = uniform(g, lo, hi);
  return m;
}

// Random exponent vector over `letters` letters with total degree exactly d.
inline hookext::dpa::DividedMonomial random_monomial(std::mt19937_64& g,
                                                     int letters, int d) {
  hookext::dpa::DividedMonomial m(letters, 0);
  for (int k = 0; k < d; ++k) ++m[std::size_t(uniform(g, 0, letters - 1))];
  return m;
}

// Random composition of n into exactly `parts` (possibly zero) parts.
inline hookext::combinatorics::Composition random_composition(std::mt19937_64& g,
                                                              int n, int parts) {
  std::vector<int> p(parts, 0);
  for (int k = 0; k < n; ++k) ++p[std::size_t(uniform(g, 0, parts - 1))];
  return hookext::combinatorics::Composition(std::move(p));
}

// ---------------------------------------------------------------------------
// Factorial-normalization model.  A divided monomial with exponents e maps to
// the coefficient 1/prod(e_k!) of the plain polynomial x^e; divided-power
// arithmetic must match ordinary polynomial arithmetic under this map.

using Rat = boost::multiprecision::cpp_rational;

inline Rat model_coeff(const hookext::dpa::DividedMonomial& e) {
  Rat r = 1;
  for (int x : e) r /= Rat(hookext::factorial(x));
  return r;
}

inline Rat model_coeff(const hookext::dpa::TensorMonomial& t) {
  Rat r = 1;
  for (const auto& f : t) r *= model_coeff(f);
  return r;
}

// ---------------------------------------------------------------------------
// Brute-force standard tableau count for a two-row shape: distribute every
// letter between the rows in all ways, sort the rows, check column
// strictness.  Deliberately naive; used as an independent oracle.

inline void brute_distribute(const std::vector<int>& content, std::size_t k,
                             std::vector<int>& row1, std::vector<int>& row2,
                             int room1, int room2, long& count) {
  if (int(k) == int(content.size())) {
    // rows are built in letter order, so both are already sorted.
    for (std::size_t c = 0; c < row2.size(); ++c)
      if (row1[c] >= row2[c]) return;
    ++count;
    return;
  }
  const int letter = int(k) + 1;
  for (int to1 = 0; to1 <= content[k]; ++to1) {
    const int to2 = content[k] - to1;
    if (to1 > room1 || to2 > room2) continue;
    for (int i = 0; i < to1; ++i) row1.push_back(letter);
    for (int i = 0; i < to2; ++i) row2.push_back(letter);
    brute_distribute(content, k + 1, row1, row2, room1 - to1, room2 - to2, count);
    for (int i = 0; i < to1; ++i) row1.pop_back();
    for (int i = 0; i < to2; ++i) row2.pop_back();
  }
}

inline long brute_standard_count(int mu1, int mu2,
                                 const hookext::combinatorics::Composition& content) {
  std::vector<int> row1, row2;
  long count = 0;
  brute_distribute(content.parts, 0, row1, row2, mu1, mu2, count);
  return count;
}

}  // namespace testsupport
