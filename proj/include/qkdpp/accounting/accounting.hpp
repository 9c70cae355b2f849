#pragma once

#include <cstdint>

namespace qkdpp {

/// sqrt(eps (2 - eps)): trace-distance security of a key whose
/// post-processing fails with probability eps. Throws DomainError outside [0,1].
double composable_zeta(double eps);

/// composable_zeta with eps given as log2 eps (may be far below the double
/// range of eps itself). Returns log2 zeta.
double composable_zeta_log2(double eps_log2);

/// Security parameter after `rounds` independent uses, rounds * zeta capped at 1.
double compose_rounds(double zeta_per_round, std::uint64_t rounds);

/// 2^-k_initial: no protocol drawing k_initial secret bits can fail less often.
double failure_lower_bound(std::uint64_t k_initial);

/// Per-step failure probabilities of one session, stored as log2 values.
/// Totals are always derived from the components, never stored.
struct FailureBudget {
  double eps_bs_log2;  // one basis-sift message; two are sent
  double eps_ev_log2;
  double eps_ph_log2;
  double eps_pa_log2;

  /// log2(2 eps_bs + eps_ev + eps_ph + eps_pa)
  [[nodiscard]] double total_log2() const;
  /// log2(2 eps_bs + eps_ev + eps_pa)
  [[nodiscard]] double eps3_log2() const;
  [[nodiscard]] double total() const;
  [[nodiscard]] double eps3() const;
  /// composable_zeta of the total.
  [[nodiscard]] double zeta() const;
};

}  // namespace qkdpp
