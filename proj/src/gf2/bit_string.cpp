#include "qkdpp/gf2/bit_string.hpp"

#include <bit>
#include <stdexcept>

#include "qkdpp/errors.hpp"

namespace qkdpp {
namespace {

std::size_t words_for(std::size_t bits) { return (bits + BitString::kWordBits - 1) / BitString::kWordBits; }

}  // namespace

BitString::BitString(std::size_t length) : words_(words_for(length), 0), length_(length) {}

BitString BitString::from_string(std::string_view bits) {
  BitString out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      out.set(i);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("BitString::from_string: expected only '0' and '1'");
    }
  }
  return out;
}

BitString BitString::from_bits(std::initializer_list<int> bits) {
  BitString out(bits.size());
  std::size_t i = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("BitString::from_bits: bits must be 0 or 1");
    if (b) out.set(i);
    ++i;
  }
  return out;
}

BitString BitString::from_words(std::vector<Word> words, std::size_t length) {
  if (words.size() < words_for(length)) {
    throw DimensionError("BitString::from_words: not enough words for requested length");
  }
  words.resize(words_for(length));
  BitString out;
  out.words_ = std::move(words);
  out.length_ = length;
  out.clear_tail();
  return out;
}

bool BitString::test(std::size_t i) const {
  if (i >= length_) throw std::out_of_range("BitString::test: index out of range");
  return (*this)[i];
}

void BitString::set(std::size_t i, bool value) {
  if (i >= length_) throw std::out_of_range("BitString::set: index out of range");
  const Word mask = Word{1} << (i % kWordBits);
  if (value) {
    words_[i / kWordBits] |= mask;
  } else {
    words_[i / kWordBits] &= ~mask;
  }
}

void BitString::flip(std::size_t i) {
  if (i >= length_) throw std::out_of_range("BitString::flip: index out of range");
  words_[i / kWordBits] ^= Word{1} << (i % kWordBits);
}

void BitString::push_back(bool bit) {
  if (length_ % kWordBits == 0) words_.push_back(0);
  ++length_;
  if (bit) words_[(length_ - 1) / kWordBits] |= Word{1} << ((length_ - 1) % kWordBits);
}

void BitString::append(const BitString& other) {
  if (other.empty()) return;
  const std::size_t shift = length_ % kWordBits;
  const std::size_t old_words = words_.size();
  length_ += other.length_;
  words_.resize(words_for(length_), 0);
  if (shift == 0) {
    std::copy(other.words_.begin(), other.words_.end(), words_.begin() + static_cast<std::ptrdiff_t>(old_words));
    return;
  }
  std::size_t dst = old_words - 1;
  for (Word w : other.words_) {
    words_[dst] |= w << shift;
    if (dst + 1 < words_.size()) words_[dst + 1] |= w >> (kWordBits - shift);
    ++dst;
  }
}

BitString BitString::slice(std::size_t pos, std::size_t len) const {
  if (pos > length_ || len > length_ - pos) throw std::out_of_range("BitString::slice: range out of bounds");
  BitString out(len);
  if (len == 0) return out;
  const std::size_t first = pos / kWordBits;
  const std::size_t shift = pos % kWordBits;
  for (std::size_t i = 0; i < out.words_.size(); ++i) {
    Word w = words_[first + i] >> shift;
    if (shift != 0 && first + i + 1 < words_.size()) w |= words_[first + i + 1] << (kWordBits - shift);
    out.words_[i] = w;
  }
  out.clear_tail();
  return out;
}

std::size_t BitString::count() const noexcept {
  std::size_t c = 0;
  for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool BitString::parity() const noexcept {
  Word acc = 0;
  for (Word w : words_) acc ^= w;
  return std::popcount(acc) & 1;
}

bool BitString::none() const noexcept {
  for (Word w : words_) {
    if (w != 0) return false;
  }
  return true;
}

BitString& BitString::operator^=(const BitString& other) {
  if (other.length_ != length_) {
    throw DimensionError("BitString: XOR of strings with lengths " + std::to_string(length_) + " and " +
                         std::to_string(other.length_));
  }
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

std::string BitString::to_string() const {
  std::string s(length_, '0');
  for (std::size_t i = 0; i < length_; ++i) {
    if ((*this)[i]) s[i] = '1';
  }
  return s;
}

std::vector<std::uint8_t> BitString::to_bytes() const {
  std::vector<std::uint8_t> out((length_ + 7) / 8, 0);
  for (std::size_t i = 0; i < length_; ++i) {
    if ((*this)[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
  }
  return out;
}

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes, std::size_t length) {
  if (bytes.size() < (length + 7) / 8) throw DimensionError("BitString::from_bytes: buffer too short");
  BitString out(length);
  for (std::size_t i = 0; i < length; ++i) {
    if (bytes[i / 8] & (0x80U >> (i % 8))) out.words_[i / kWordBits] |= Word{1} << (i % kWordBits);
  }
  return out;
}

void BitString::clear_tail() noexcept {
  const std::size_t r = length_ % kWordBits;
  if (r != 0 && !words_.empty()) words_.back() &= (Word{1} << r) - 1;
}

std::vector<std::uint8_t> serialize(const BitString& bits) {
  std::vector<std::uint8_t> out;
  const std::uint64_t len = bits.size();
  out.reserve(8 + (bits.size() + 7) / 8);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(len >> (8 * i)));
  const auto body = bits.to_bytes();
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

BitString deserialize(std::span<const std::uint8_t> bytes, std::size_t* consumed) {
  if (bytes.size() < 8) throw DimensionError("deserialize: missing length header");
  std::uint64_t len = 0;
  for (int i = 0; i < 8; ++i) len |= std::uint64_t{bytes[static_cast<std::size_t>(i)]} << (8 * i);
  const std::uint64_t body = (len + 7) / 8;
  if (bytes.size() - 8 < body) throw DimensionError("deserialize: truncated bit string body");
  if (consumed != nullptr) *consumed = static_cast<std::size_t>(8 + body);
  return BitString::from_bytes(bytes.subspan(8, static_cast<std::size_t>(body)), static_cast<std::size_t>(len));
}

}  // namespace qkdpp
