#include "qkdpp/gf2/polynomial.hpp"

#include <bit>

#include "qkdpp/errors.hpp"
#include "qkdpp/gf2/clmul.hpp"

namespace qkdpp {
namespace {

std::vector<std::size_t> prime_factors(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

Gf2Polynomial Gf2Polynomial::from_coefficients(const BitString& coeffs) {
  Gf2Polynomial p;
  p.words_.assign(coeffs.words().begin(), coeffs.words().end());
  p.trim();
  return p;
}

Gf2Polynomial Gf2Polynomial::from_exponents(std::initializer_list<std::size_t> exponents) {
  Gf2Polynomial p;
  for (std::size_t e : exponents) p.set_coefficient(e, !p.coefficient(e));
  return p;
}

Gf2Polynomial Gf2Polynomial::monomial(std::size_t exponent) {
  Gf2Polynomial p;
  p.set_coefficient(exponent, true);
  return p;
}

long Gf2Polynomial::degree() const noexcept {
  for (std::size_t i = words_.size(); i-- > 0;) {
    if (words_[i] != 0) return static_cast<long>(i * 64 + 63 - static_cast<std::size_t>(std::countl_zero(words_[i])));
  }
  return -1;
}

bool Gf2Polynomial::coefficient(std::size_t i) const noexcept {
  return i / 64 < words_.size() && ((words_[i / 64] >> (i % 64)) & 1U);
}

void Gf2Polynomial::set_coefficient(std::size_t i, bool value) {
  if (i / 64 >= words_.size()) {
    if (!value) return;
    words_.resize(i / 64 + 1, 0);
  }
  const std::uint64_t mask = std::uint64_t{1} << (i % 64);
  if (value) {
    words_[i / 64] |= mask;
  } else {
    words_[i / 64] &= ~mask;
  }
  trim();
}

BitString Gf2Polynomial::coefficients(std::size_t len) const {
  BitString out(len);
  for (std::size_t i = 0; i < len; ++i) {
    if (coefficient(i)) out.set(i);
  }
  return out;
}

std::string Gf2Polynomial::to_string() const {
  const long d = degree();
  if (d < 0) return "0";
  std::string s;
  for (long i = d; i >= 0; --i) {
    if (!coefficient(static_cast<std::size_t>(i))) continue;
    if (!s.empty()) s += " + ";
    if (i == 0) {
      s += "1";
    } else if (i == 1) {
      s += "x";
    } else {
      s += "x^" + std::to_string(i);
    }
  }
  return s;
}

Gf2Polynomial& Gf2Polynomial::operator+=(const Gf2Polynomial& other) {
  if (other.words_.size() > words_.size()) words_.resize(other.words_.size(), 0);
  for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] ^= other.words_[i];
  trim();
  return *this;
}

Gf2Polynomial operator*(const Gf2Polynomial& a, const Gf2Polynomial& b) {
  Gf2Polynomial p;
  p.words_ = gf2::clmul(a.words_, b.words_);
  p.trim();
  return p;
}

bool operator==(const Gf2Polynomial& a, const Gf2Polynomial& b) { return a.words_ == b.words_; }

Gf2Polynomial Gf2Polynomial::mod(const Gf2Polynomial& modulus) const {
  const long dm = modulus.degree();
  if (dm < 0) throw DomainError("Gf2Polynomial::mod: zero modulus");
  Gf2Polynomial r = *this;
  for (long d = r.degree(); d >= dm; d = r.degree()) {
    // r -= modulus * x^(d - dm), done word-wise with a bit shift.
    const std::size_t shift = static_cast<std::size_t>(d - dm);
    const std::size_t ws = shift / 64;
    const std::size_t bs = shift % 64;
    for (std::size_t i = 0; i < modulus.words_.size(); ++i) {
      const std::uint64_t w = modulus.words_[i];
      r.words_[i + ws] ^= w << bs;
      if (bs != 0 && i + ws + 1 < r.words_.size()) r.words_[i + ws + 1] ^= w >> (64 - bs);
    }
    r.trim();
  }
  return r;
}

void Gf2Polynomial::trim() noexcept {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

Gf2Polynomial mul_mod(const Gf2Polynomial& a, const Gf2Polynomial& b, const Gf2Polynomial& modulus) {
  return (a * b).mod(modulus);
}

Gf2Polynomial gcd(Gf2Polynomial a, Gf2Polynomial b) {
  while (!b.is_zero()) {
    Gf2Polynomial r = a.mod(b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool is_irreducible(const Gf2Polynomial& p) {
  const long k = p.degree();
  if (k <= 0) return false;
  const auto uk = static_cast<std::size_t>(k);
  const Gf2Polynomial x = Gf2Polynomial::monomial(1).mod(p);

  // powers[i] = x^(2^i) mod p for i = 0..k
  std::vector<Gf2Polynomial> powers;
  powers.reserve(uk + 1);
  powers.push_back(x);
  for (std::size_t i = 1; i <= uk; ++i) powers.push_back(mul_mod(powers.back(), powers.back(), p));

  if (!(powers[uk] == x)) return false;
  const Gf2Polynomial one = Gf2Polynomial::monomial(0);
  for (std::size_t r : prime_factors(uk)) {
    const Gf2Polynomial g = gcd(p, powers[uk / r] + x);
    if (!(g == one)) return false;
  }
  return true;
}

}  // namespace qkdpp
