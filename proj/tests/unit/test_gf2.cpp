#include <doctest.h>

#include <cmath>
#include <random>

#include "qkdpp/errors.hpp"
#include "qkdpp/gf2/bit_string.hpp"
#include "qkdpp/gf2/clmul.hpp"
#include "qkdpp/gf2/lfsr_hash.hpp"
#include "qkdpp/gf2/polynomial.hpp"
#include "qkdpp/gf2/toeplitz.hpp"
#include "support/oracles.hpp"

using namespace qkdpp;

TEST_CASE("bit string basics") {
  BitString b = BitString::from_string("1011001");
  CHECK(b.size() == 7);
  CHECK(b.count() == 4);
  CHECK(b.parity() == false);
  CHECK(b.to_string() == "1011001");
  b.flip(1);
  CHECK(b.to_string() == "1111001");
  CHECK(b.slice(2, 3).to_string() == "110");
  CHECK_THROWS_AS((void)b.test(7), std::out_of_range);
  CHECK_THROWS_AS(BitString::from_string("10x"), std::invalid_argument);

  BitString c = BitString::from_string("01");
  b.append(c);
  CHECK(b.to_string() == "111100101");
  CHECK_THROWS_AS(b ^ c, DimensionError);
}

TEST_CASE("append and slice across word boundaries") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t la = rng() % 200;
    const std::size_t lb = rng() % 200;
    const BitString a = BitString::random(la, rng);
    const BitString b = BitString::random(lb, rng);
    BitString ab = a;
    ab.append(b);
    CHECK(ab.to_string() == a.to_string() + b.to_string());
    CHECK(ab.slice(la, lb) == b);
    CHECK(ab.slice(0, la) == a);
  }
  BitString p;
  for (int i = 0; i < 130; ++i) p.push_back(i % 3 == 0);
  CHECK(p.count() == 44);
}

TEST_CASE("serialization layout and round trip") {
  const BitString b = BitString::from_string("1000000011");
  const auto bytes = serialize(b);
  REQUIRE(bytes.size() == 8 + 2);
  CHECK(bytes[0] == 10);
  for (int i = 1; i < 8; ++i) CHECK(bytes[static_cast<std::size_t>(i)] == 0);
  CHECK(bytes[8] == 0x80);
  CHECK(bytes[9] == 0xC0);
  std::size_t used = 0;
  CHECK(deserialize(bytes, &used) == b);
  CHECK(used == bytes.size());

  std::mt19937_64 rng(3);
  for (std::size_t len : {0, 1, 7, 8, 9, 63, 64, 65, 1000}) {
    const BitString r = BitString::random(len, rng);
    CHECK(deserialize(serialize(r), nullptr) == r);
  }
  auto truncated = serialize(BitString::from_string("111111111"));
  truncated.pop_back();
  CHECK_THROWS_AS(deserialize(truncated, nullptr), DimensionError);
}

TEST_CASE("carry-less multiply matches schoolbook") {
  std::mt19937_64 rng(11);
  auto reference = [](const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    std::vector<std::uint64_t> out(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        std::uint64_t lo = 0;
        std::uint64_t hi = 0;
        gf2::clmul64_portable(a[i], b[j], lo, hi);
        out[i + j] ^= lo;
        out[i + j + 1] ^= hi;
      }
    }
    return out;
  };
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<std::uint64_t> a(1 + rng() % 150);
    std::vector<std::uint64_t> b(1 + rng() % 150);
    for (auto& w : a) w = rng();
    for (auto& w : b) w = rng();
    CHECK(gf2::clmul(a, b) == reference(a, b));
  }
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  gf2::clmul64_portable(0x3, 0x3, lo, hi);  // (z+1)^2 = z^2+1
  CHECK(lo == 0x5);
  CHECK(hi == 0);
  gf2::clmul64_portable(std::uint64_t{1} << 63, 0x2, lo, hi);
  CHECK(lo == 0);
  CHECK(hi == 1);
}

TEST_CASE("irreducibility test agrees with trial division") {
  for (std::uint64_t c = 2; c < (1U << 11); ++c) {
    const Gf2Polynomial p = Gf2Polynomial::from_coefficients(oracle::from_index(c, 11));
    CHECK_MESSAGE(is_irreducible(p) == oracle::brute_irreducible(c), p.to_string());
  }
  // x^64 + x^4 + x^3 + x + 1 is a known irreducible pentanomial.
  CHECK(is_irreducible(Gf2Polynomial::from_exponents({64, 4, 3, 1, 0})));
  CHECK_FALSE(is_irreducible(Gf2Polynomial::from_exponents({64, 4, 3, 1})));
}

TEST_CASE("polynomial arithmetic") {
  const auto a = Gf2Polynomial::from_exponents({3, 1, 0});
  const auto b = Gf2Polynomial::from_exponents({1, 0});
  CHECK((a * b) == Gf2Polynomial::from_exponents({4, 3, 2, 0}));
  CHECK((a * b).mod(a).is_zero());
  CHECK(gcd(a * b, b * b) == b);
  CHECK(a.to_string() == "x^3 + x + 1");
  CHECK_THROWS_AS((void)a.mod(Gf2Polynomial{}), DomainError);
}

TEST_CASE("toeplitz hand example") {
  // M = [[1,0,1],[1,1,0]], x = (1,1,0)
  const ToeplitzSpec spec{2, 3, BitString::from_bits({1, 0, 1, 1})};
  CHECK(spec.entry(0, 0));
  CHECK_FALSE(spec.entry(0, 1));
  CHECK(spec.entry(0, 2));
  CHECK(spec.entry(1, 0));
  CHECK(spec.entry(1, 1));
  CHECK_FALSE(spec.entry(1, 2));
  CHECK(toeplitz_apply(spec, BitString::from_bits({1, 1, 0})) == BitString::from_bits({1, 0}));
}

TEST_CASE("toeplitz zero and identity matrices") {
  std::mt19937_64 rng(5);
  for (std::size_t n : {1, 5, 64, 130}) {
    const BitString x = BitString::random(n, rng);
    const ToeplitzSpec zero{3, n, BitString(n + 2)};
    CHECK(toeplitz_apply(zero, x).none());
    ToeplitzSpec ident{n, n, BitString(2 * n - 1)};
    ident.diag.set(n - 1);
    CHECK(toeplitz_apply(ident, x) == x);
  }
}

TEST_CASE("toeplitz dimension checks") {
  const ToeplitzSpec spec{2, 3, BitString(4)};
  CHECK_THROWS_AS(toeplitz_apply(spec, BitString(4)), DimensionError);
  const ToeplitzSpec bad{2, 3, BitString(5)};
  CHECK_THROWS_AS(toeplitz_apply(bad, BitString(3)), DimensionError);
  const ToeplitzSpec empty_rows{0, 4, BitString(3)};
  CHECK(toeplitz_apply(empty_rows, BitString(4)).empty());
}

TEST_CASE("toeplitz fast path equals naive multiply") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t l = 1 + rng() % 256;
    const std::size_t m = 1 + rng() % 256;
    const ToeplitzSpec spec{l, m, BitString::random(l + m - 1, rng)};
    const BitString x = BitString::random(m, rng);
    REQUIRE(toeplitz_apply(spec, x) == oracle::naive_toeplitz(spec, x));
  }
}

TEST_CASE("toeplitz linearity") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t l = 1 + rng() % 3000;
    const std::size_t m = 1 + rng() % 3000;
    const ToeplitzSpec spec{l, m, BitString::random(l + m - 1, rng)};
    const BitString x = BitString::random(m, rng);
    const BitString y = BitString::random(m, rng);
    CHECK(toeplitz_apply(spec, x ^ y) == (toeplitz_apply(spec, x) ^ toeplitz_apply(spec, y)));
  }
}

TEST_CASE("two-universality, small exhaustive") {
  const std::size_t l = 2;
  const std::size_t m = 3;
  const std::uint64_t matrices = 1U << (l + m - 1);
  for (std::uint64_t xi = 0; xi < (1U << m); ++xi) {
    for (std::uint64_t yi = xi + 1; yi < (1U << m); ++yi) {
      const BitString x = oracle::from_index(xi, m);
      const BitString y = oracle::from_index(yi, m);
      std::uint64_t hits = 0;
      for (std::uint64_t d = 0; d < matrices; ++d) {
        const ToeplitzSpec spec{l, m, oracle::from_index(d, l + m - 1)};
        if (toeplitz_apply(spec, x) == toeplitz_apply(spec, y)) ++hits;
      }
      CHECK(hits * (1U << l) == matrices);
    }
  }
}

TEST_CASE("one-time pad") {
  CHECK(one_time_pad(BitString::from_bits({1, 0, 1}), BitString::from_bits({1, 1, 0})) ==
        BitString::from_bits({0, 1, 1}));
  std::mt19937_64 rng(1);
  const BitString d = BitString::random(77, rng);
  const BitString p = BitString::random(77, rng);
  CHECK(one_time_pad(d, BitString(77)) == d);
  CHECK(one_time_pad(one_time_pad(d, p), p) == d);
  CHECK_THROWS_AS(one_time_pad(d, BitString(76)), DimensionError);
}

TEST_CASE("lfsr tag hand example") {
  const auto spec = LfsrToeplitzSpec::make(2, 3, Gf2Polynomial::from_exponents({2, 1, 0}), BitString::from_bits({1, 0}));
  // Columns: (1,0), (1,1), (0,1).
  CHECK(lfsr_toeplitz_tag(spec, BitString::from_bits({1, 0, 0})) == BitString::from_bits({1, 0}));
  CHECK(lfsr_toeplitz_tag(spec, BitString::from_bits({0, 1, 0})) == BitString::from_bits({1, 1}));
  CHECK(lfsr_toeplitz_tag(spec, BitString::from_bits({0, 0, 1})) == BitString::from_bits({0, 1}));
  CHECK(lfsr_toeplitz_tag(spec, BitString(3)).none());
  CHECK_THROWS_AS(lfsr_toeplitz_tag(spec, BitString(4)), DimensionError);
}

TEST_CASE("lfsr spec validation") {
  const auto p2 = Gf2Polynomial::from_exponents({2, 1, 0});
  CHECK_THROWS_AS(LfsrToeplitzSpec::make(2, 3, p2, BitString(2)), InvalidSpec);
  CHECK_THROWS_AS(LfsrToeplitzSpec::make(2, 3, Gf2Polynomial::from_exponents({2, 0}), BitString::from_bits({1, 0})),
                  InvalidSpec);
  CHECK_THROWS_AS(LfsrToeplitzSpec::make(3, 3, p2, BitString::from_bits({1, 0, 0})), InvalidSpec);
  CHECK_THROWS_AS(LfsrToeplitzSpec::make(0, 3, Gf2Polynomial::monomial(0), BitString{}), InvalidSpec);
}

TEST_CASE("lfsr tag matches register simulation and is linear") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 1 + rng() % 80;
    const std::size_t n = rng() % 400;
    const auto spec = derive_lfsr_spec(BitString::random(2 * k, rng), k, n);
    const BitString a = BitString::random(n, rng);
    const BitString b = BitString::random(n, rng);
    REQUIRE(lfsr_toeplitz_tag(spec, a) == oracle::naive_lfsr_tag(spec.poly(), spec.state(), a));
    CHECK(lfsr_toeplitz_tag(spec, a ^ b) == (lfsr_toeplitz_tag(spec, a) ^ lfsr_toeplitz_tag(spec, b)));
  }
}

TEST_CASE("lfsr collision bound, exhaustive k=3") {
  const std::size_t k = 3;
  std::vector<Gf2Polynomial> polys;
  for (std::uint64_t low = 0; low < 8; ++low) {
    auto p = Gf2Polynomial::from_coefficients(oracle::from_index(low | 8U, 4));
    if (is_irreducible(p)) polys.push_back(p);
  }
  REQUIRE(polys.size() == 2);
  for (std::size_t n = 1; n <= 5; ++n) {
    const double bound = static_cast<double>(n) * std::pow(2.0, -static_cast<double>(k) + 1);
    for (std::uint64_t xi = 0; xi < (1U << n); ++xi) {
      for (std::uint64_t yi = xi + 1; yi < (1U << n); ++yi) {
        const BitString diff = oracle::from_index(xi ^ yi, n);
        int hits = 0;
        int total = 0;
        for (const auto& p : polys) {
          for (std::uint64_t s = 1; s < 8; ++s) {
            const auto spec = LfsrToeplitzSpec::make(k, n, p, oracle::from_index(s, k));
            if (lfsr_toeplitz_tag(spec, diff).none()) ++hits;
            ++total;
          }
        }
        CHECK(static_cast<double>(hits) / total <= bound + 1e-12);
      }
    }
  }
}

TEST_CASE("derive_lfsr_spec") {
  std::mt19937_64 rng(8);
  const BitString secret = BitString::random(64, rng);
  const auto a = derive_lfsr_spec(secret, 32, 100);
  const auto b = derive_lfsr_spec(secret, 32, 100);
  CHECK(a.poly() == b.poly());
  CHECK(a.state() == b.state());

  for (int i = 0; i < 50; ++i) {
    const auto s = derive_lfsr_spec(BitString::random(4, rng), 2, 10);
    CHECK(s.poly() == Gf2Polynomial::from_exponents({2, 1, 0}));
  }
  // zero state half is replaced by a nonzero draw
  const auto z = derive_lfsr_spec(BitString::from_bits({1, 0, 1, 0, 0, 0}), 3, 5);
  CHECK_FALSE(z.state().none());

  for (int i = 0; i < 1000; ++i) {
    const std::size_t k = 1 + rng() % 64;
    const auto s = derive_lfsr_spec(BitString::random(2 * k, rng), k, 50);
    REQUIRE(s.poly().degree() == static_cast<long>(k));
    REQUIRE(is_irreducible(s.poly()));
    REQUIRE(s.state().size() == k);
    REQUIRE_FALSE(s.state().none());
  }
  CHECK_THROWS_AS(derive_lfsr_spec(BitString{}, 0, 5), InvalidSpec);
  CHECK_THROWS_AS(derive_lfsr_spec(BitString(5), 3, 5), DimensionError);
}
