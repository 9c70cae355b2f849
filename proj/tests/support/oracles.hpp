#pragma once

// Slow, obviously-correct reference implementations used only by tests.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qkdpp/gf2/bit_string.hpp"
#include "qkdpp/gf2/polynomial.hpp"
#include "qkdpp/gf2/toeplitz.hpp"

namespace oracle {

using qkdpp::BitString;

// Triple loop: y_i = XOR_j a_{i-j} x_j.
inline BitString naive_toeplitz(const qkdpp::ToeplitzSpec& spec, const BitString& x) {
  BitString y(spec.rows);
  for (std::size_t i = 0; i < spec.rows; ++i) {
    bool acc = false;
    for (std::size_t j = 0; j < spec.cols; ++j) {
      if (spec.diag[i + spec.cols - 1 - j] && x[j]) acc = !acc;
    }
    if (acc) y.set(i);
  }
  return y;
}

// Explicit register simulation: column j is the register after j steps.
inline std::vector<BitString> lfsr_columns(const qkdpp::Gf2Polynomial& poly, BitString state, std::size_t n) {
  const std::size_t k = state.size();
  std::vector<BitString> cols;
  for (std::size_t j = 0; j < n; ++j) {
    cols.push_back(state);
    bool top = false;
    for (std::size_t i = 0; i < k; ++i) {
      if (poly.coefficient(i) && state[k - 1 - i]) top = !top;
    }
    BitString next(k);
    if (top) next.set(0);
    for (std::size_t r = 1; r < k; ++r) {
      if (state[r - 1]) next.set(r);
    }
    state = next;
  }
  return cols;
}

inline BitString naive_lfsr_tag(const qkdpp::Gf2Polynomial& poly, const BitString& state, const BitString& msg) {
  const auto cols = lfsr_columns(poly, state, msg.size());
  BitString tag(state.size());
  for (std::size_t j = 0; j < msg.size(); ++j) {
    if (msg[j]) tag ^= cols[j];
  }
  return tag;
}

inline BitString from_index(std::uint64_t v, std::size_t len) {
  BitString b(len);
  for (std::size_t i = 0; i < len; ++i) {
    if ((v >> i) & 1U) b.set(i);
  }
  return b;
}

// Irreducibility by trial division over all polynomials of lower degree.
inline bool brute_irreducible(std::uint64_t coeffs) {
  auto deg = [](std::uint64_t p) { return 63 - __builtin_clzll(p); };
  if (coeffs < 2) return false;
  const int d = deg(coeffs);
  for (std::uint64_t q = 2; q < (std::uint64_t{1} << d); ++q) {
    std::uint64_t r = coeffs;
    const int dq = deg(q);
    while (r != 0 && deg(r) >= dq) r ^= q << (deg(r) - dq);
    if (r == 0) return false;
  }
  return true;
}

}  // namespace oracle

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

namespace oracle {

inline boost::multiprecision::cpp_int binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  boost::multiprecision::cpp_int r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// sum_{k < m} C(n, k)
inline boost::multiprecision::cpp_int binomial_sum_below(std::uint64_t n, std::uint64_t m) {
  boost::multiprecision::cpp_int s = 0;
  for (std::uint64_t k = 0; k < m && k <= n; ++k) s += binomial(n, k);
  return s;
}

inline long double entropy_ld(long double x) {
  if (x <= 0 || x >= 1) return 0;
  return -x * std::log2(x) - (1 - x) * std::log2(1 - x);
}

inline long double xi_ld(long double e, long double q, long double t) {
  return entropy_ld(e + t - q * t) - q * entropy_ld(e) - (1 - q) * entropy_ld(e + t);
}

}  // namespace oracle
