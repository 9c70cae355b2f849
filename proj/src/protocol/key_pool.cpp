#include "qkdpp/protocol/key_pool.hpp"

namespace qkdpp {

KeyPool::KeyPool(BitString init) : bits_(std::move(init)), initial_(bits_.size()) {}

BitString KeyPool::take(std::size_t k) {
  if (k > remaining()) {
    throw PoolExhausted("key pool exhausted: need " + std::to_string(k) + " bits, " + std::to_string(remaining()) +
                        " left");
  }
  BitString out = bits_.slice(pos_, k);
  pos_ += k;
  return out;
}

BitString KeyPool::consume(std::size_t k, const std::string& step) {
  BitString out = take(k);
  consumed_ += k;
  ledger_.push_back({step, PoolMove::Consume, k});
  return out;
}

BitString KeyPool::borrow(std::size_t k, const std::string& step) {
  BitString out = take(k);
  outstanding_ += k;
  ledger_.push_back({step, PoolMove::Borrow, k});
  return out;
}

void KeyPool::give_back(const BitString& bits, const std::string& step) {
  if (bits.size() > outstanding_) throw std::logic_error("KeyPool::give_back: more bits than borrowed");
  BitString rest = bits_.slice(pos_, bits_.size() - pos_);
  bits_ = bits;
  bits_.append(rest);
  pos_ = 0;
  outstanding_ -= bits.size();
  ledger_.push_back({step, PoolMove::Return, bits.size()});
}

std::size_t KeyPool::consumed_by(const std::string& step) const {
  std::size_t total = 0;
  for (const auto& r : ledger_) {
    if (r.step == step && r.move == PoolMove::Consume) total += r.bits;
  }
  return total;
}

bool KeyPool::conserved() const {
  std::size_t consumed = 0;
  std::size_t out = 0;
  for (const auto& r : ledger_) {
    if (r.move == PoolMove::Consume) consumed += r.bits;
    if (r.move == PoolMove::Borrow) out += r.bits;
    if (r.move == PoolMove::Return) out -= r.bits;
  }
  return consumed == consumed_ && out == outstanding_ && initial_ == remaining() + consumed + out;
}

std::string to_string(PoolMove m) {
  switch (m) {
    case PoolMove::Consume:
      return "consume";
    case PoolMove::Borrow:
      return "borrow";
    case PoolMove::Return:
      return "return";
  }
  return "?";
}

}  // namespace qkdpp
