#include "qkdpp/protocol/quantum_sim.hpp"

#include <cmath>

#include "qkdpp/errors.hpp"

namespace qkdpp {

void SessionParams::validate() const {
  const auto prob = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidSpec(std::string(name) + " must lie in [0,1]");
  };
  if (N < 1) throw InvalidSpec("N must be at least 1");
  prob(eta, "eta");
  prob(e_bx, "e_bx");
  prob(e_bz, "e_bz");
  prob(p_x, "p_x");
  prob(p_dc, "p_dc");
  if (!(eps_target > 0.0 && eps_target < 1.0)) throw InvalidSpec("eps_target must lie in (0,1)");
  if (!(f_ec >= 1.0) || !std::isfinite(f_ec)) throw InvalidSpec("f_ec must be at least 1");
}

QuantumRecords simulate_quantum_phase(const SessionParams& p) {
  p.validate();
  std::mt19937_64 ga(p.rng_seed_alice);
  std::mt19937_64 gb(p.rng_seed_bob);
  std::mt19937_64 gc(p.rng_seed_channel);
  const auto n = static_cast<std::size_t>(p.N);
  QuantumRecords r{{BitString(n), BitString(n)}, {BitString(n), BitString(n), BitString(n), BitString(n)}};
  for (std::size_t i = 0; i < n; ++i) {
    const bool a_basis = uniform01(ga) >= p.p_x;
    const bool a_bit = (ga() >> 63) != 0;
    const bool b_basis = uniform01(gb) >= p.p_x;
    if (a_basis) r.alice.basis.set(i);
    if (a_bit) r.alice.bits.set(i);
    if (b_basis) r.bob.basis.set(i);
    if (!(uniform01(gc) < p.eta)) continue;
    r.bob.detected.set(i);
    if (uniform01(gc) < p.p_dc) r.bob.double_click.set(i);
    bool b_bit = false;
    if (a_basis == b_basis) {
      const double e = a_basis ? p.e_bz : p.e_bx;
      b_bit = a_bit != (uniform01(gc) < e);
    } else {
      b_bit = (gc() >> 63) != 0;
    }
    if (b_bit) r.bob.bits.set(i);
  }
  return r;
}

SiftedRaw key_sift(const BobRecords& bob, std::mt19937_64& rng, bool random_basis) {
  SiftedRaw out;
  for (std::size_t i = 0; i < bob.detected.size(); ++i) {
    if (!bob.detected[i]) continue;
    bool bit = bob.bits[i];
    bool basis = bob.basis[i];
    if (bob.double_click[i]) {
      bit = (rng() >> 63) != 0;
      if (random_basis) basis = (rng() >> 63) != 0;
    }
    out.key.push_back(bit);
    out.basis.push_back(basis);
  }
  out.n = out.key.size();
  return out;
}

SiftedRaw alice_key_sift(const AliceRecords& alice, const BitString& detected) {
  if (detected.size() != alice.bits.size()) throw DimensionError("detection pattern length differs from pulse count");
  SiftedRaw out;
  for (std::size_t i = 0; i < detected.size(); ++i) {
    if (!detected[i]) continue;
    out.key.push_back(alice.bits[i]);
    out.basis.push_back(alice.basis[i]);
  }
  out.n = out.key.size();
  return out;
}

}  // namespace qkdpp
