#pragma once

#include <cstddef>

#include "qkdpp/gf2/bit_string.hpp"
#include "qkdpp/gf2/polynomial.hpp"
#include "qkdpp/gf2/toeplitz.hpp"

namespace qkdpp {

/// k x n Toeplitz matrix whose columns are successive states of a k-bit
/// linear feedback shift register (Krawczyk's construction).
///
/// Register convention: state[0] is the top row. One step computes the new
/// top bit as XOR_i c_i * state[k-1-i], where c_i are the low coefficients of
/// the monic connection polynomial, and moves every other bit down one row.
/// Column j of the matrix is the register after j steps.
class LfsrToeplitzSpec {
 public:
  /// Throws InvalidSpec unless poly has degree k and is irreducible, state
  /// has k bits and is nonzero, and k >= 1.
  static LfsrToeplitzSpec make(std::size_t tag_len, std::size_t msg_len, Gf2Polynomial poly, BitString state);

  [[nodiscard]] std::size_t tag_len() const noexcept { return tag_len_; }
  [[nodiscard]] std::size_t msg_len() const noexcept { return msg_len_; }
  [[nodiscard]] const Gf2Polynomial& poly() const noexcept { return poly_; }
  [[nodiscard]] const BitString& state() const noexcept { return state_; }

  /// The explicit Toeplitz description of the same matrix.
  [[nodiscard]] ToeplitzSpec to_toeplitz() const;

 private:
  LfsrToeplitzSpec(std::size_t k, std::size_t n, Gf2Polynomial poly, BitString state)
      : tag_len_(k), msg_len_(n), poly_(std::move(poly)), state_(std::move(state)) {}

  std::size_t tag_len_;
  std::size_t msg_len_;
  Gf2Polynomial poly_;
  BitString state_;
};

/// k-bit tag M x. Throws DimensionError if msg.size() != spec.msg_len().
BitString lfsr_toeplitz_tag(const LfsrToeplitzSpec& spec, const BitString& msg);

/// Deterministic map from 2k shared secret bits to a hash choice.
///
/// The first k bits seed a std::mt19937_64 through std::seed_seq (32-bit
/// chunks, bit i at position i % 32 of chunk i / 32, preceded by k). The
/// generator draws monic degree-k candidates, low coefficient first, until
/// one passes the irreducibility test; at most 4k^2 draws. The last k bits
/// are the initial register; if they are all zero the generator supplies
/// fresh k-bit states until one is nonzero.
LfsrToeplitzSpec derive_lfsr_spec(const BitString& secret, std::size_t k, std::size_t n);

}  // namespace qkdpp
