#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkdpp/gf2/bit_string.hpp"

namespace qkdpp {

struct PoolExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class PoolMove { Consume, Borrow, Return };

struct PoolRecord {
  std::string step;
  PoolMove move;
  std::size_t bits;
};

/// Pre-shared secret bits. Consumed bits are never issued again. Borrowed
/// bits (hash keys for authentication) go back to the front of the pool when
/// returned, so the next borrow of the same size yields the same hash key.
class KeyPool {
 public:
  explicit KeyPool(BitString init);

  /// Throws PoolExhausted if fewer than k bits remain.
  BitString consume(std::size_t k, const std::string& step);
  BitString borrow(std::size_t k, const std::string& step);
  void give_back(const BitString& bits, const std::string& step);

  [[nodiscard]] std::size_t initial() const noexcept { return initial_; }
  [[nodiscard]] std::size_t remaining() const noexcept { return bits_.size() - pos_; }
  [[nodiscard]] std::size_t consumed() const noexcept { return consumed_; }
  [[nodiscard]] std::size_t outstanding() const noexcept { return outstanding_; }
  [[nodiscard]] const std::vector<PoolRecord>& ledger() const noexcept { return ledger_; }
  /// Bits consumed under the given step label.
  [[nodiscard]] std::size_t consumed_by(const std::string& step) const;
  /// initial == remaining + consumed + outstanding, recomputed from the ledger.
  [[nodiscard]] bool conserved() const;

 private:
  BitString take(std::size_t k);

  BitString bits_;
  std::size_t pos_ = 0;
  std::size_t initial_;
  std::size_t consumed_ = 0;
  std::size_t outstanding_ = 0;
  std::vector<PoolRecord> ledger_;
};

std::string to_string(PoolMove m);

}  // namespace qkdpp
