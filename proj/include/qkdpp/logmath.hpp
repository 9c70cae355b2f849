#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace qkdpp::logmath {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log2(2^a + 2^b) without leaving the log domain.
inline double add(double a, double b) noexcept {
  if (a < b) std::swap(a, b);
  if (b == kNegInf) return a;
  return a + std::log2(1.0 + std::exp2(b - a));
}

/// log2 of a sum of 2^x_i. Terms are added largest first, so the result
/// depends only on the multiset of inputs, not their order.
inline double sum(std::span<const double> xs) {
  std::vector<double> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end(), [](double a, double b) { return a > b; });
  double acc = kNegInf;
  for (double x : v) acc = add(acc, x);
  return acc;
}

/// 2^x, with the convention that x = -inf gives 0.
inline double to_linear(double x) noexcept { return x == kNegInf ? 0.0 : std::exp2(x); }

inline double from_linear(double p) noexcept { return p <= 0.0 ? kNegInf : std::log2(p); }

}  // namespace qkdpp::logmath
