#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

namespace hookext {

/// Exact arbitrary-precision signed integer used for all matrix entries,
/// coefficients and invariant factors.
using Int = boost::multiprecision::cpp_int;

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

inline Int gcd_int(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Int gcd_all(const std::vector<Int>& xs) {
  Int g = 0;
  for (const auto& x : xs) g = gcd_int(g, x);
  return g;
}

/// Binomial coefficient C(n, k) as an exact integer; zero when k is out of
/// range.  Multiplicative form, every intermediate division is exact.
inline Int binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

inline Int factorial(std::int64_t n) {
  Int r = 1;
  for (std::int64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

inline std::string to_string(const Int& x) { return x.str(); }

}  // namespace hookext
