#pragma once

#include <cstddef>

#include "qkdpp/gf2/bit_string.hpp"

namespace qkdpp {

/// An l x m Toeplitz matrix over GF(2), M(i,j) = a_{i-j}.
///
/// `diag` holds a_{-m+1}, ..., a_0, ..., a_{l-1} in that order, so entry
/// (i,j) lives at diag[i - j + m - 1]. For rows == 0 the matrix is empty and
/// diag carries the m-1 leading entries only.
struct ToeplitzSpec {
  std::size_t rows = 0;
  std::size_t cols = 0;
  BitString diag;

  [[nodiscard]] std::size_t diag_length() const noexcept { return cols == 0 ? 0 : rows + cols - 1; }
  [[nodiscard]] bool entry(std::size_t i, std::size_t j) const { return diag[i + cols - 1 - j]; }
  /// Throws DimensionError if diag has the wrong length.
  void validate() const;
};

/// M x over GF(2).
///
/// Output bit i is the coefficient of z^(i+m-1) in D(z) X(z), where D and X
/// are the generating polynomials of diag and x. The product is computed
/// with the carry-less multiply in clmul.hpp, so cost is subquadratic in m.
BitString toeplitz_apply(const ToeplitzSpec& spec, const BitString& x);

/// Elementwise XOR. Throws DimensionError on length mismatch.
BitString one_time_pad(const BitString& data, const BitString& pad);

}  // namespace qkdpp
