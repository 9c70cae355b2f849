#include "qkdpp/protocol/steps.hpp"

#include "qkdpp/bounds/entropy.hpp"
#include "qkdpp/logmath.hpp"
#include "qkdpp/gf2/toeplitz.hpp"
#include "qkdpp/optimizer/costs.hpp"
#include "qkdpp/protocol/authenticator.hpp"

namespace qkdpp {
namespace {

std::mt19937_64 stream(std::uint64_t seed, std::uint32_t purpose) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), purpose};
  return std::mt19937_64(seq);
}

void send_authenticated(PartyIo& io, FrameType type, const BitString& msg, std::size_t k, const std::string& step) {
  io.send({type, msg, authenticate(io.pool(), step, k, msg)});
}

BitString receive_authenticated(PartyIo& io, FrameType type, std::size_t k, const std::string& step) {
  const MessageFrame f = io.expect(type, step);
  if (!verify_tag(io.pool(), step, k, f.payload, f.tag)) {
    throw ProtocolAbort(step, "authentication tag mismatch on " + to_string(type));
  }
  return f.payload;
}

double realized_f(std::uint64_t bits, std::uint64_t n, std::uint64_t errors) {
  if (n == 0 || errors == 0) return 0.0;
  const double h = binary_entropy(static_cast<double>(errors) / static_cast<double>(n));
  return static_cast<double>(bits) / (static_cast<double>(n) * h);
}

}  // namespace

SiftedRaw key_sift_step(PartyIo& io, const QuantumRecords& rec, const SessionParams& p, StepReport& report) {
  report = StepReport{step::kKeySift, 0, logmath::kNegInf, {}};
  SiftedRaw raw;
  if (io.is_alice()) {
    const MessageFrame f = io.expect(FrameType::KeySift, step::kKeySift);
    if (f.payload.size() != rec.alice.bits.size()) throw ProtocolAbort(step::kKeySift, "detection pattern has the wrong length");
    raw = alice_key_sift(rec.alice, f.payload);
  } else {
    std::mt19937_64 g = stream(p.rng_seed_bob, 0x6b73);
    raw = key_sift(rec.bob, g, p.double_click_random_basis);
    io.send({FrameType::KeySift, rec.bob.detected, {}});
  }
  report.aux["n"] = static_cast<double>(raw.n);
  return raw;
}

BasisSiftResult basis_sift(PartyIo& io, const SiftedRaw& raw, std::int64_t k_bs, StepReport& report) {
  const auto k = static_cast<std::size_t>(k_bs);
  const std::uint64_t before = io.pool().consumed();
  BitString theirs;
  if (io.is_alice()) {
    send_authenticated(io, FrameType::BasisSift, raw.basis, k, step::kBasisSift);
    theirs = receive_authenticated(io, FrameType::BasisSift, k, step::kBasisSift);
  } else {
    theirs = receive_authenticated(io, FrameType::BasisSift, k, step::kBasisSift);
    send_authenticated(io, FrameType::BasisSift, raw.basis, k, step::kBasisSift);
  }
  if (theirs.size() != raw.basis.size()) throw ProtocolAbort(step::kBasisSift, "basis string has the wrong length");

  BasisSiftResult r;
  r.n = raw.n;
  for (std::size_t i = 0; i < raw.n; ++i) {
    if (theirs[i] != raw.basis[i]) continue;
    (raw.basis[i] ? r.key_z : r.key_x).push_back(raw.key[i]);
  }
  r.n_x = r.key_x.size();
  r.n_z = r.key_z.size();
  report = StepReport{step::kBasisSift, io.pool().consumed() - before, eps_basis_sift_log2(raw.n, k_bs) + 1.0, {}};
  report.aux["n"] = static_cast<double>(r.n);
  report.aux["n_x"] = static_cast<double>(r.n_x);
  report.aux["n_z"] = static_cast<double>(r.n_z);
  return r;
}

EcResult error_correct(PartyIo& io, const BitString& key_x, const BitString& key_z, const SessionParams& p,
                       int attempt, StepReport& report) {
  const std::uint64_t before = io.pool().consumed();
  EcResult r;
  const auto seed = [&](std::uint64_t basis) { return (static_cast<std::uint64_t>(attempt) << 1) | basis; };
  const CascadeOutcome cx = cascade(io, key_x, {p.e_bx, 4, p.f_ec, seed(0), step::kErrorCorrect});
  const CascadeOutcome cz = cascade(io, key_z, {p.e_bz, 4, p.f_ec, seed(1), step::kErrorCorrect});
  r.key_x = cx.key;
  r.key_z = cz.key;
  r.errors_x = cx.error_positions.size();
  r.errors_z = cz.error_positions.size();
  r.alice_bits_x = cx.alice_bits;
  r.alice_bits_z = cz.alice_bits;
  r.total_bits = cx.alice_bits + cx.bob_bits + cz.alice_bits + cz.bob_bits;
  report = StepReport{step::kErrorCorrect, io.pool().consumed() - before, logmath::kNegInf, {}};
  report.aux["attempt"] = attempt;
  report.aux["errors_x"] = static_cast<double>(r.errors_x);
  report.aux["errors_z"] = static_cast<double>(r.errors_z);
  report.aux["alice_parities_x"] = static_cast<double>(r.alice_bits_x);
  report.aux["alice_parities_z"] = static_cast<double>(r.alice_bits_z);
  report.aux["parity_bits_total"] = static_cast<double>(r.total_bits);
  report.aux["f_realized_x"] = realized_f(r.alice_bits_x, key_x.size(), r.errors_x);
  report.aux["f_realized_z"] = realized_f(r.alice_bits_z, key_z.size(), r.errors_z);
  return r;
}

bool error_verify(PartyIo& io, const BitString& key, std::int64_t k_ev) {
  const auto k = static_cast<std::size_t>(k_ev);
  if (io.is_alice()) {
    io.send({FrameType::EvTag, {}, authenticate(io.pool(), step::kErrorVerify, k, key)});
    const MessageFrame v = io.expect(FrameType::EvResult, step::kErrorVerify);
    if (v.payload.size() != 1) throw ProtocolAbort(step::kErrorVerify, "malformed verdict");
    return v.payload[0];
  }
  const MessageFrame f = io.expect(FrameType::EvTag, step::kErrorVerify);
  const bool ok = verify_tag(io.pool(), step::kErrorVerify, k, key, f.tag);
  BitString verdict(1);
  verdict.set(0, ok);
  io.send({FrameType::EvResult, verdict, {}});
  return ok;
}

BitString privacy_amplify_key(const BitString& key, const BitString& seed, std::size_t l) {
  return toeplitz_apply(ToeplitzSpec{l, key.size(), seed}, key);
}

BitString privacy_amplify(PartyIo& io, const BitString& key, std::size_t l, std::int64_t k_pa, std::mt19937_64& rng) {
  const auto k = static_cast<std::size_t>(k_pa);
  const std::size_t len = key.empty() ? 0 : key.size() + l - 1;
  BitString seed;
  if (io.is_alice()) {
    seed = BitString::random(len, rng);
    send_authenticated(io, FrameType::PaSeed, seed, k, step::kPrivacyAmplify);
  } else {
    seed = receive_authenticated(io, FrameType::PaSeed, k, step::kPrivacyAmplify);
    if (seed.size() != len) throw ProtocolAbort(step::kPrivacyAmplify, "seed has the wrong length");
  }
  return privacy_amplify_key(key, seed, l);
}

}  // namespace qkdpp
