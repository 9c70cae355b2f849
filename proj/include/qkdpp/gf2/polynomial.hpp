#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qkdpp/gf2/bit_string.hpp"

namespace qkdpp {

/// Polynomial over GF(2). Coefficient of x^i is bit i of the packed words.
class Gf2Polynomial {
 public:
  Gf2Polynomial() = default;
  static Gf2Polynomial from_coefficients(const BitString& coeffs);
  /// Builds sum of x^e for each listed exponent.
  static Gf2Polynomial from_exponents(std::initializer_list<std::size_t> exponents);
  static Gf2Polynomial monomial(std::size_t exponent);

  /// -1 for the zero polynomial.
  [[nodiscard]] long degree() const noexcept;
  [[nodiscard]] bool coefficient(std::size_t i) const noexcept;
  void set_coefficient(std::size_t i, bool value);
  [[nodiscard]] bool is_zero() const noexcept { return degree() < 0; }

  /// Coefficients 0..len-1 as a BitString (bit i = coefficient of x^i).
  [[nodiscard]] BitString coefficients(std::size_t len) const;
  [[nodiscard]] std::string to_string() const;

  Gf2Polynomial& operator+=(const Gf2Polynomial& other);
  friend Gf2Polynomial operator+(Gf2Polynomial a, const Gf2Polynomial& b) {
    a += b;
    return a;
  }
  friend Gf2Polynomial operator*(const Gf2Polynomial& a, const Gf2Polynomial& b);
  friend bool operator==(const Gf2Polynomial& a, const Gf2Polynomial& b);

  [[nodiscard]] Gf2Polynomial mod(const Gf2Polynomial& modulus) const;

 private:
  void trim() noexcept;
  std::vector<std::uint64_t> words_;
};

Gf2Polynomial mul_mod(const Gf2Polynomial& a, const Gf2Polynomial& b, const Gf2Polynomial& modulus);
Gf2Polynomial gcd(Gf2Polynomial a, Gf2Polynomial b);

/// Rabin's test: p of degree k is irreducible iff x^(2^k) = x (mod p) and
/// gcd(x^(2^(k/r)) - x, p) = 1 for every prime r dividing k.
bool is_irreducible(const Gf2Polynomial& p);

}  // namespace qkdpp
