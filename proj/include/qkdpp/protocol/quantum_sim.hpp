#pragma once

#include <cstdint>
#include <random>

#include "qkdpp/gf2/bit_string.hpp"
#include "qkdpp/protocol/params.hpp"

namespace qkdpp {

/// Basis bit: 0 = X, 1 = Z.
struct AliceRecords {
  BitString basis;
  BitString bits;
};

struct BobRecords {
  BitString detected;
  BitString double_click;
  BitString basis;
  BitString bits;  // measured value; meaningful only where detected
};

struct QuantumRecords {
  AliceRecords alice;
  BobRecords bob;
};

/// Uniform double in [0,1) from the top 53 bits of one draw.
inline double uniform01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

/// Per pulse, in order: Alice draws basis then bit (Alice's generator), Bob
/// draws basis (Bob's generator), the channel draws detection, then for a
/// detection a double click and either a flip (matched basis, probability
/// e_bx or e_bz by basis) or a uniform outcome (mismatched basis).
QuantumRecords simulate_quantum_phase(const SessionParams& p);

/// Bob's raw key: detected positions only, double clicks replaced by a
/// uniform bit from `rng` (and a uniform basis when `random_basis`).
struct SiftedRaw {
  BitString key;
  BitString basis;
  std::uint64_t n = 0;
};
SiftedRaw key_sift(const BobRecords& bob, std::mt19937_64& rng, bool random_basis = false);

/// Alice's side of key sift: her bits and bases at the positions Bob announced.
SiftedRaw alice_key_sift(const AliceRecords& alice, const BitString& detected);

}  // namespace qkdpp
