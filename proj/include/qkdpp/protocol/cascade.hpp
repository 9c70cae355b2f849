#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qkdpp/gf2/bit_string.hpp"
#include "qkdpp/protocol/party_io.hpp"

namespace qkdpp {

struct CascadeConfig {
  double e_est = 0.04;        // sets the first block size, about 0.73 / e_est
  int passes = 4;             // block size doubles each pass
  double f_target = 1.0;      // abort once Alice's parities exceed 3 f n H(e_est)
  std::uint64_t perm_seed = 0;  // public seed for the per-pass shuffles
  std::string step = "error_correct";
};

struct CascadeOutcome {
  BitString key;  // Alice: unchanged; Bob: corrected
  std::vector<std::size_t> error_positions;  // sorted
  std::size_t alice_bits = 0;  // padded parities sent by Alice
  std::size_t bob_bits = 0;    // padded replies sent by Bob
  int passes_run = 0;
};

/// Block size of the first pass: round(0.73 / e), clamped to [1, n]; n when e is 0.
std::size_t cascade_first_block(double e_est, std::size_t n);

/// Alice's parity limit: 3 max(1, ceil(f n H(e))).
std::size_t cascade_parity_limit(double e_est, double f, std::size_t n);

/// Interactive Cascade over `io`. Each round Alice sends the parities of a
/// batch of index sets and Bob answers with the mismatch bit of each, both
/// one-time padded from the pool. Pass 0 uses the natural order, later passes
/// a Fisher-Yates shuffle drawn from perm_seed. Every located error is
/// traced back through the earlier passes. Both parties run the same code
/// and stay in step because all branching depends on exchanged bits only.
/// Throws ProtocolAbort(step) when the parity budget is exceeded.
CascadeOutcome cascade(PartyIo& io, const BitString& key, const CascadeConfig& cfg);

}  // namespace qkdpp
