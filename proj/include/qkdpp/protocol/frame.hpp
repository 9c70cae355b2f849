#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qkdpp/gf2/bit_string.hpp"

namespace qkdpp {

enum class FrameType : std::uint8_t {
  BasisSift = 1,
  EcParity = 2,
  EvTag = 3,
  PaSeed = 4,
  KeySift = 5,   // detection pattern announced by Bob
  EvResult = 6,  // Bob's one-bit verdict after error verification
};

std::string to_string(FrameType t);

struct MessageFrame {
  FrameType type = FrameType::BasisSift;
  BitString payload;
  BitString tag;

  friend bool operator==(const MessageFrame&, const MessageFrame&) = default;
};

/// Wire form: [u32 LE payload bits][u8 type][payload bytes][u16 LE tag bits][tag bytes].
/// Bit strings are packed MSB-first as BitString::to_bytes.
std::vector<std::uint8_t> encode_frame(const MessageFrame& f);

/// Throws DimensionError on a truncated or malformed buffer.
MessageFrame decode_frame(std::span<const std::uint8_t> bytes);

/// Byte length of the frame starting at `bytes`, or 0 if the header is not complete yet.
std::size_t frame_size(std::span<const std::uint8_t> bytes);

}  // namespace qkdpp
