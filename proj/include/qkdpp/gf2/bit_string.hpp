#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qkdpp {

/// Ordered sequence of bits with an explicit length.
///
/// Index 0 is the first (leftmost, first transmitted) bit. Bits are packed
/// into 64-bit words, bit i living in word i / 64 at position i % 64
/// counting from the least significant end. Bits past size() in the last
/// word are always zero, so word-wise comparison and popcount are exact.
class BitString {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitString() = default;
  explicit BitString(std::size_t length);

  static BitString from_string(std::string_view bits);
  static BitString from_bits(std::initializer_list<int> bits);
  static BitString from_words(std::vector<Word> words, std::size_t length);

  /// Fills `length` bits from a 64-bit generator (one call per word).
  template <class Generator>
  static BitString random(std::size_t length, Generator& gen) {
    BitString out(length);
    for (auto& w : out.words_) w = static_cast<Word>(gen());
    out.clear_tail();
    return out;
  }

  [[nodiscard]] std::size_t size() const noexcept { return length_; }
  [[nodiscard]] bool empty() const noexcept { return length_ == 0; }
  [[nodiscard]] std::size_t word_count() const noexcept { return words_.size(); }

  [[nodiscard]] bool operator[](std::size_t i) const noexcept {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
  }
  [[nodiscard]] bool test(std::size_t i) const;
  void set(std::size_t i, bool value = true);
  void flip(std::size_t i);

  void push_back(bool bit);
  void append(const BitString& other);
  [[nodiscard]] BitString slice(std::size_t pos, std::size_t len) const;

  [[nodiscard]] std::size_t count() const noexcept;
  [[nodiscard]] bool parity() const noexcept;
  [[nodiscard]] bool none() const noexcept;

  BitString& operator^=(const BitString& other);
  friend BitString operator^(BitString lhs, const BitString& rhs) {
    lhs ^= rhs;
    return lhs;
  }
  friend bool operator==(const BitString&, const BitString&) = default;

  [[nodiscard]] std::span<const Word> words() const noexcept { return words_; }
  /// Mutable word access; callers must keep the tail bits zero.
  [[nodiscard]] std::span<Word> mutable_words() noexcept { return words_; }

  [[nodiscard]] std::string to_string() const;

  /// ceil(size/8) bytes, bit 0 in the most significant bit of byte 0.
  [[nodiscard]] std::vector<std::uint8_t> to_bytes() const;
  static BitString from_bytes(std::span<const std::uint8_t> bytes, std::size_t length);

 private:
  void clear_tail() noexcept;

  std::vector<Word> words_;
  std::size_t length_ = 0;
};

/// Wire/file form: 64-bit little-endian length followed by to_bytes().
std::vector<std::uint8_t> serialize(const BitString& bits);

/// Inverse of serialize(). When `consumed` is non-null it receives the number
/// of bytes read, so several strings can be decoded from one buffer.
BitString deserialize(std::span<const std::uint8_t> bytes, std::size_t* consumed = nullptr);

}  // namespace qkdpp
