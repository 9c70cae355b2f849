#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkdpp/protocol/channel.hpp"
#include "qkdpp/protocol/key_pool.hpp"

namespace qkdpp {

enum class Role { Alice, Bob };
std::string to_string(Role r);

/// A step gave up. `step` is the label of the step that was running.
struct ProtocolAbort : std::runtime_error {
  ProtocolAbort(std::string step_label, const std::string& reason)
      : std::runtime_error(reason), step(std::move(step_label)) {}
  std::string step;
};

struct TranscriptEntry {
  bool outgoing;
  std::vector<std::uint8_t> bytes;
  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

/// One party's view of the classical link: channel, pool and transcript.
class PartyIo {
 public:
  PartyIo(Role role, Channel& ch, KeyPool& pool) : role_(role), ch_(ch), pool_(pool) {}

  [[nodiscard]] Role role() const noexcept { return role_; }
  [[nodiscard]] bool is_alice() const noexcept { return role_ == Role::Alice; }
  KeyPool& pool() noexcept { return pool_; }
  [[nodiscard]] const std::vector<TranscriptEntry>& transcript() const noexcept { return transcript_; }

  void send(const MessageFrame& f);
  /// Throws ProtocolAbort(step) if the next frame has another type or the
  /// peer has gone away.
  MessageFrame expect(FrameType type, const std::string& step);

 private:
  Role role_;
  Channel& ch_;
  KeyPool& pool_;
  std::vector<TranscriptEntry> transcript_;
};

}  // namespace qkdpp
