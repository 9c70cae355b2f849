#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>

#include "qkdpp/gf2/bit_string.hpp"
#include "qkdpp/protocol/cascade.hpp"
#include "qkdpp/protocol/party_io.hpp"
#include "qkdpp/protocol/params.hpp"
#include "qkdpp/protocol/quantum_sim.hpp"

namespace qkdpp {

namespace step {
inline const std::string kKeySift = "key_sift";
inline const std::string kBasisSift = "basis_sift";
inline const std::string kErrorCorrect = "error_correct";
inline const std::string kErrorVerify = "error_verify";
inline const std::string kPhaseEstimation = "phase_estimation";
inline const std::string kPrivacyAmplify = "privacy_amplify";
}  // namespace step

struct StepReport {
  std::string step;
  std::uint64_t key_cost = 0;  // pool bits consumed
  double eps_log2 = -std::numeric_limits<double>::infinity();
  std::map<std::string, double> aux;
};

/// Bob announces his detection pattern (KEY_SIFT, untagged) and both keep
/// the detected positions. Double clicks get a uniform bit from Bob's generator.
SiftedRaw key_sift_step(PartyIo& io, const QuantumRecords& rec, const SessionParams& p, StepReport& report);

struct BasisSiftResult {
  BitString key_x;
  BitString key_z;
  std::uint64_t n = 0;
  std::uint64_t n_x = 0;
  std::uint64_t n_z = 0;
};

/// Alice sends her n-bit basis string, then Bob sends his, each with a k_bs
/// tag. Mismatched positions are dropped. Reports eps = 2 n 2^(1-k_bs).
BasisSiftResult basis_sift(PartyIo& io, const SiftedRaw& raw, std::int64_t k_bs, StepReport& report);

struct EcResult {
  BitString key_x;
  BitString key_z;
  std::uint64_t errors_x = 0;
  std::uint64_t errors_z = 0;
  std::uint64_t alice_bits_x = 0;
  std::uint64_t alice_bits_z = 0;
  std::uint64_t total_bits = 0;  // both directions, all padded
};

/// Cascade on the X bits, then on the Z bits. `attempt` varies the shuffles.
EcResult error_correct(PartyIo& io, const BitString& key_x, const BitString& key_z, const SessionParams& p,
                       int attempt, StepReport& report);

/// Alice sends a k_ev tag of her whole key with no message; Bob compares it
/// with the tag of his key and returns a one-bit verdict (EV_RESULT).
bool error_verify(PartyIo& io, const BitString& key, std::int64_t k_ev);

/// Toeplitz hash with an (m + l - 1)-bit diagonal seed, output l bits.
BitString privacy_amplify_key(const BitString& key, const BitString& seed, std::size_t l);

/// Alice draws the seed from `rng` and sends it with a k_pa tag; both hash.
BitString privacy_amplify(PartyIo& io, const BitString& key, std::size_t l, std::int64_t k_pa, std::mt19937_64& rng);

}  // namespace qkdpp
