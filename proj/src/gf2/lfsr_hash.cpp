#include "qkdpp/gf2/lfsr_hash.hpp"

#include <bit>
#include <random>
#include <string>
#include <vector>

#include "qkdpp/errors.hpp"

namespace qkdpp {
namespace {

using Word = BitString::Word;

// Output sequence s_0, s_1, ... with s_{t+k} = XOR_i c_i s_{t+i}. The
// register after j steps is (s_{j+k-1}, ..., s_j) from top to bottom.
BitString lfsr_sequence(const Gf2Polynomial& poly, const BitString& state, std::size_t len) {
  const std::size_t k = state.size();
  BitString seq(len);
  const std::size_t nw = (k + 63) / 64;
  std::vector<Word> window(nw, 0);  // bit i = s_{t+i}
  std::vector<Word> taps(nw, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (state[k - 1 - i]) window[i / 64] |= Word{1} << (i % 64);
    if (poly.coefficient(i)) taps[i / 64] |= Word{1} << (i % 64);
  }
  for (std::size_t t = 0; t < len; ++t) {
    if (window[0] & 1U) seq.set(t);
    Word acc = 0;
    for (std::size_t w = 0; w < nw; ++w) acc ^= window[w] & taps[w];
    const Word next = static_cast<Word>(std::popcount(acc) & 1);
    for (std::size_t w = 0; w + 1 < nw; ++w) window[w] = (window[w] >> 1) | (window[w + 1] << 63);
    window[nw - 1] >>= 1;
    window[(k - 1) / 64] |= next << ((k - 1) % 64);
  }
  return seq;
}

}  // namespace

LfsrToeplitzSpec LfsrToeplitzSpec::make(std::size_t tag_len, std::size_t msg_len, Gf2Polynomial poly,
                                        BitString state) {
  if (tag_len == 0) throw InvalidSpec("LfsrToeplitzSpec: tag length must be at least 1");
  if (poly.degree() != static_cast<long>(tag_len)) {
    throw InvalidSpec("LfsrToeplitzSpec: polynomial degree " + std::to_string(poly.degree()) +
                      " does not match tag length " + std::to_string(tag_len));
  }
  if (state.size() != tag_len) throw InvalidSpec("LfsrToeplitzSpec: state length does not match tag length");
  if (state.none()) throw InvalidSpec("LfsrToeplitzSpec: initial state is zero");
  if (!is_irreducible(poly)) throw InvalidSpec("LfsrToeplitzSpec: polynomial " + poly.to_string() + " is reducible");
  return LfsrToeplitzSpec(tag_len, msg_len, std::move(poly), std::move(state));
}

ToeplitzSpec LfsrToeplitzSpec::to_toeplitz() const {
  const std::size_t k = tag_len_;
  const std::size_t n = msg_len_;
  ToeplitzSpec t{k, n, BitString{}};
  if (n == 0) return t;
  // M(i,j) = s_{j-i+k-1}; diag[d] holds M(i,j) for d = i-j+n-1, so diag is
  // the sequence reversed.
  const std::size_t len = k + n - 1;
  const BitString seq = lfsr_sequence(poly_, state_, len);
  t.diag = BitString(len);
  for (std::size_t d = 0; d < len; ++d) {
    if (seq[len - 1 - d]) t.diag.set(d);
  }
  return t;
}

BitString lfsr_toeplitz_tag(const LfsrToeplitzSpec& spec, const BitString& msg) {
  if (msg.size() != spec.msg_len()) {
    throw DimensionError("lfsr_toeplitz_tag: message has " + std::to_string(msg.size()) + " bits, spec expects " +
                         std::to_string(spec.msg_len()));
  }
  return toeplitz_apply(spec.to_toeplitz(), msg);
}

LfsrToeplitzSpec derive_lfsr_spec(const BitString& secret, std::size_t k, std::size_t n) {
  if (k == 0) throw InvalidSpec("derive_lfsr_spec: k must be at least 1");
  if (secret.size() != 2 * k) {
    throw DimensionError("derive_lfsr_spec: need " + std::to_string(2 * k) + " secret bits, got " +
                         std::to_string(secret.size()));
  }
  std::vector<std::uint32_t> chunks{static_cast<std::uint32_t>(k)};
  chunks.resize(1 + (k + 31) / 32, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (secret[i]) chunks[1 + i / 32] |= std::uint32_t{1} << (i % 32);
  }
  std::seed_seq seq(chunks.begin(), chunks.end());
  std::mt19937_64 prg(seq);

  const std::size_t max_draws = 4 * k * k;
  Gf2Polynomial poly;
  bool found = false;
  for (std::size_t attempt = 0; attempt < max_draws && !found; ++attempt) {
    poly = Gf2Polynomial::from_coefficients(BitString::random(k, prg));
    poly.set_coefficient(k, true);
    found = is_irreducible(poly);
  }
  if (!found) throw InvalidSpec("derive_lfsr_spec: no irreducible polynomial within the draw limit");

  BitString state = secret.slice(k, k);
  while (state.none()) state = BitString::random(k, prg);
  return LfsrToeplitzSpec::make(k, n, std::move(poly), std::move(state));
}

}  // namespace qkdpp
