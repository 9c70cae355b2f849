#pragma once

#include <cstddef>
#include <string>

#include "qkdpp/gf2/bit_string.hpp"
#include "qkdpp/protocol/key_pool.hpp"

namespace qkdpp {

/// Wegman-Carter tag: LFSR Toeplitz hash keyed by 2k borrowed pool bits,
/// one-time padded with k consumed pool bits. The hash key goes back to the
/// pool afterwards; only the pad is spent.
BitString authenticate(KeyPool& pool, const std::string& step, std::size_t k, const BitString& msg);

/// Runs the same pool operations as authenticate and compares tags.
bool verify_tag(KeyPool& pool, const std::string& step, std::size_t k, const BitString& msg, const BitString& tag);

}  // namespace qkdpp
