#include "qkdpp/protocol/frame.hpp"

#include <limits>

#include "qkdpp/errors.hpp"

namespace qkdpp {
namespace {

constexpr std::size_t kHeader = 5;

std::size_t bytes_for(std::size_t bits) { return (bits + 7) / 8; }

std::uint32_t read_u32(std::span<const std::uint8_t> b) {
  return std::uint32_t{b[0]} | (std::uint32_t{b[1]} << 8) | (std::uint32_t{b[2]} << 16) | (std::uint32_t{b[3]} << 24);
}

}  // namespace

std::string to_string(FrameType t) {
  switch (t) {
    case FrameType::BasisSift:
      return "BASIS_SIFT";
    case FrameType::EcParity:
      return "EC_PARITY";
    case FrameType::EvTag:
      return "EV_TAG";
    case FrameType::PaSeed:
      return "PA_SEED";
    case FrameType::KeySift:
      return "KEY_SIFT";
    case FrameType::EvResult:
      return "EV_RESULT";
  }
  return "UNKNOWN";
}

std::vector<std::uint8_t> encode_frame(const MessageFrame& f) {
  if (f.payload.size() > std::numeric_limits<std::uint32_t>::max()) throw DimensionError("frame payload too long");
  if (f.tag.size() > std::numeric_limits<std::uint16_t>::max()) throw DimensionError("frame tag too long");
  std::vector<std::uint8_t> out;
  out.reserve(kHeader + bytes_for(f.payload.size()) + 2 + bytes_for(f.tag.size()));
  const auto plen = static_cast<std::uint32_t>(f.payload.size());
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(plen >> (8 * i)));
  out.push_back(static_cast<std::uint8_t>(f.type));
  const auto pb = f.payload.to_bytes();
  out.insert(out.end(), pb.begin(), pb.end());
  const auto tlen = static_cast<std::uint16_t>(f.tag.size());
  out.push_back(static_cast<std::uint8_t>(tlen));
  out.push_back(static_cast<std::uint8_t>(tlen >> 8));
  const auto tb = f.tag.to_bytes();
  out.insert(out.end(), tb.begin(), tb.end());
  return out;
}

std::size_t frame_size(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeader) return 0;
  const std::size_t pbytes = bytes_for(read_u32(bytes));
  if (bytes.size() < kHeader + pbytes + 2) return 0;
  const std::size_t tbits = std::size_t{bytes[kHeader + pbytes]} | (std::size_t{bytes[kHeader + pbytes + 1]} << 8);
  return kHeader + pbytes + 2 + bytes_for(tbits);
}

MessageFrame decode_frame(std::span<const std::uint8_t> bytes) {
  const std::size_t total = frame_size(bytes);
  if (total == 0 || bytes.size() != total) throw DimensionError("decode_frame: truncated or oversized frame");
  const std::uint32_t plen = read_u32(bytes);
  const std::uint8_t type = bytes[4];
  if (type < 1 || type > 6) throw DimensionError("decode_frame: unknown message type " + std::to_string(type));
  MessageFrame f;
  f.type = static_cast<FrameType>(type);
  const std::size_t pbytes = bytes_for(plen);
  f.payload = BitString::from_bytes(bytes.subspan(kHeader, pbytes), plen);
  const std::size_t tbits = std::size_t{bytes[kHeader + pbytes]} | (std::size_t{bytes[kHeader + pbytes + 1]} << 8);
  f.tag = BitString::from_bytes(bytes.subspan(kHeader + pbytes + 2), tbits);
  return f;
}

}  // namespace qkdpp
