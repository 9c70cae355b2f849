#include "qkdpp/gf2/clmul.hpp"

#include <algorithm>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define QKDPP_X86 1
#endif

namespace qkdpp::gf2 {
namespace {

using Word = std::uint64_t;
using MulFn = void (*)(Word, Word, Word&, Word&) noexcept;

constexpr std::size_t kSchoolbookWords = 24;

#ifdef QKDPP_X86
__attribute__((target("pclmul,sse2"))) void clmul64_hw(Word a, Word b, Word& lo, Word& hi) noexcept {
  const __m128i va = _mm_set_epi64x(0, static_cast<long long>(a));
  const __m128i vb = _mm_set_epi64x(0, static_cast<long long>(b));
  const __m128i r = _mm_clmulepi64_si128(va, vb, 0x00);
  lo = static_cast<Word>(_mm_cvtsi128_si64(r));
  hi = static_cast<Word>(_mm_cvtsi128_si64(_mm_unpackhi_epi64(r, r)));
}
#endif

MulFn pick_base() noexcept {
#ifdef QKDPP_X86
  __builtin_cpu_init();
  if (__builtin_cpu_supports("pclmul")) return &clmul64_hw;
#endif
  return &clmul64_portable;
}

const MulFn kBase = pick_base();

// out[0 .. a.size()+b.size()) ^= a*b
void schoolbook(std::span<const Word> a, std::span<const Word> b, std::span<Word> out) noexcept {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      Word lo = 0;
      Word hi = 0;
      kBase(a[i], b[j], lo, hi);
      out[i + j] ^= lo;
      out[i + j + 1] ^= hi;
    }
  }
}

// Both operands have exactly n words; out has 2n words and is accumulated into.
void karatsuba(std::span<const Word> a, std::span<const Word> b, std::span<Word> out) {
  const std::size_t n = a.size();
  if (n <= kSchoolbookWords) {
    schoolbook(a, b, out);
    return;
  }
  const std::size_t h = (n + 1) / 2;
  const std::size_t hi_len = n - h;

  std::vector<Word> z0(2 * h, 0);
  std::vector<Word> z2(2 * h, 0);
  std::vector<Word> z1(2 * h, 0);
  std::vector<Word> a_hi(h, 0);
  std::vector<Word> b_hi(h, 0);
  std::copy_n(a.begin() + static_cast<std::ptrdiff_t>(h), hi_len, a_hi.begin());
  std::copy_n(b.begin() + static_cast<std::ptrdiff_t>(h), hi_len, b_hi.begin());

  karatsuba(a.first(h), b.first(h), z0);
  karatsuba(a_hi, b_hi, z2);

  std::vector<Word> sa(h);
  std::vector<Word> sb(h);
  for (std::size_t i = 0; i < h; ++i) {
    sa[i] = a[i] ^ a_hi[i];
    sb[i] = b[i] ^ b_hi[i];
  }
  karatsuba(sa, sb, z1);
  for (std::size_t i = 0; i < 2 * h; ++i) z1[i] ^= z0[i] ^ z2[i];

  for (std::size_t i = 0; i < 2 * h; ++i) out[i] ^= z0[i];
  for (std::size_t i = 0; i < 2 * h && h + i < out.size(); ++i) out[h + i] ^= z1[i];
  for (std::size_t i = 0; i < 2 * h && 2 * h + i < out.size(); ++i) out[2 * h + i] ^= z2[i];
}

}  // namespace

void clmul64_portable(Word a, Word b, Word& lo, Word& hi) noexcept {
  lo = 0;
  hi = 0;
  for (unsigned i = 0; i < 64; ++i) {
    if ((b >> i) & 1U) {
      lo ^= a << i;
      if (i != 0) hi ^= a >> (64 - i);
    }
  }
}

bool hardware_clmul_available() noexcept { return kBase != &clmul64_portable; }

std::vector<Word> clmul(std::span<const Word> a, std::span<const Word> b) {
  std::vector<Word> out(a.size() + b.size(), 0);
  if (a.empty() || b.empty()) return out;
  if (a.size() < b.size()) std::swap(a, b);
  // a is the longer operand: cut it into b-sized chunks.
  const std::size_t nb = b.size();
  if (nb <= kSchoolbookWords) {
    schoolbook(a, b, out);
    return out;
  }
  std::vector<Word> chunk(nb);
  std::vector<Word> partial(2 * nb);
  for (std::size_t off = 0; off < a.size(); off += nb) {
    const std::size_t len = std::min(nb, a.size() - off);
    std::fill(chunk.begin(), chunk.end(), 0);
    std::copy_n(a.begin() + static_cast<std::ptrdiff_t>(off), len, chunk.begin());
    std::fill(partial.begin(), partial.end(), 0);
    karatsuba(chunk, b, partial);
    const std::size_t span_len = std::min(partial.size(), out.size() - off);
    for (std::size_t i = 0; i < span_len; ++i) out[off + i] ^= partial[i];
  }
  return out;
}

}  // namespace qkdpp::gf2
