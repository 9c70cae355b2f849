#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qkdpp/protocol/frame.hpp"

namespace qkdpp {

struct ChannelClosed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Ordered, reliable duplex message channel between the two parties.
class Channel {
 public:
  virtual ~Channel() = default;
  virtual void send(const MessageFrame& f) = 0;
  /// Blocks until a frame arrives. Throws ChannelClosed once the peer has
  /// closed and nothing is left to read.
  virtual MessageFrame receive() = 0;
  virtual void close() = 0;
};

/// Both ends of an in-process channel. Frames travel as encoded bytes.
class InMemoryLink {
 public:
  InMemoryLink();
  ~InMemoryLink();
  InMemoryLink(const InMemoryLink&) = delete;
  InMemoryLink& operator=(const InMemoryLink&) = delete;
  Channel& alice();
  Channel& bob();

 private:
  struct Queue {
    std::mutex mu;
    std::condition_variable cv;
    std::deque<std::vector<std::uint8_t>> items;
    bool closed = false;
  };
  class End;
  std::shared_ptr<Queue> a_to_b_;
  std::shared_ptr<Queue> b_to_a_;
  std::unique_ptr<End> alice_;
  std::unique_ptr<End> bob_;
};

/// What a man in the middle does to frames passing through.
struct Tamper {
  FrameType type = FrameType::BasisSift;
  bool in_tag = false;    // flip a tag bit instead of a payload bit
  std::size_t bit = 0;    // index, taken modulo the field length
};

/// Decorator flipping one bit of every outgoing frame of the chosen type.
class TamperingChannel : public Channel {
 public:
  TamperingChannel(Channel& inner, Tamper t) : inner_(inner), t_(t) {}
  void send(const MessageFrame& f) override;
  MessageFrame receive() override { return inner_.receive(); }
  void close() override { inner_.close(); }
  [[nodiscard]] std::size_t flips() const noexcept { return flips_; }

 private:
  Channel& inner_;
  Tamper t_;
  std::size_t flips_ = 0;
};

}  // namespace qkdpp
