#include "qkdpp/protocol/party_io.hpp"

namespace qkdpp {

std::string to_string(Role r) { return r == Role::Alice ? "alice" : "bob"; }

void PartyIo::send(const MessageFrame& f) {
  transcript_.push_back({true, encode_frame(f)});
  ch_.send(f);
}

MessageFrame PartyIo::expect(FrameType type, const std::string& step) {
  MessageFrame f;
  try {
    f = ch_.receive();
  } catch (const ChannelClosed& e) {
    throw ProtocolAbort(step, std::string("peer closed the channel: ") + e.what());
  }
  transcript_.push_back({false, encode_frame(f)});
  if (f.type != type) {
    throw ProtocolAbort(step, "expected " + to_string(type) + " but received " + to_string(f.type));
  }
  return f;
}

}  // namespace qkdpp
