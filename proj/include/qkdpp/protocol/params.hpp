#pragma once

#include <cstdint>

namespace qkdpp {

struct SessionParams {
  std::uint64_t N = 100000;  // pulses sent
  double eta = 0.1;          // transmittance
  double e_bx = 0.04;
  double e_bz = 0.04;
  double p_x = 0.5;          // probability of choosing the X basis
  double p_dc = 0.0;         // double clicks among detections
  double eps_target = 1e-4;
  double f_ec = 1.0;
  std::uint64_t rng_seed_alice = 1;
  std::uint64_t rng_seed_bob = 2;
  std::uint64_t rng_seed_channel = 3;
  std::uint64_t rng_seed_pool = 4;  // both parties build the same pre-shared pool from it
  std::uint64_t pool_init = 100000;
  bool double_click_random_basis = false;  // passive basis choice: double clicks also get a random basis

  /// Throws InvalidSpec naming the first offending field.
  void validate() const;
};

}  // namespace qkdpp
