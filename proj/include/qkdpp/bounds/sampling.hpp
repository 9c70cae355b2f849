#pragma once

#include <cstdint>

namespace qkdpp {

/// Observed counts and deviations for the two-basis phase-error estimate.
/// theta_x is a multiple of 1/n_z and theta_z of 1/n_x.
struct SamplingInput {
  std::uint64_t n_x = 0;
  std::uint64_t n_z = 0;
  double e_bx = 0.0;
  double e_bz = 0.0;
  double theta_x = 0.0;
  double theta_z = 0.0;

  /// Throws DomainError if the counts or rates are out of range.
  void validate() const;
};

/// log2 of the upper bound on Pr{e_p >= e_b + theta}: the phase error rate
/// on n_target unmeasured bits exceeds the bit error rate e_b observed on
/// n_sample bits by theta or more.
///
///   sqrt(N) / sqrt(e_b (1 - e_b) n_sample n_target) * 2^(-N xi(e_b, q, theta))
///
/// with N = n_sample + n_target and q = n_sample / N. e_b must be in (0,1);
/// callers substitute e_b = 1/n_sample for a zero error count.
double phase_sampling_bound_log2(std::uint64_t n_sample, std::uint64_t n_target, double e_b, double theta);

/// The same bound written in the hypergeometric variables: population N, sample
/// n, k marked items in the sample, m marked items in total. A count k = 0 is
/// replaced by k = 1, which can only increase the point probability being bounded.
double sampling_bound_counts_log2(std::uint64_t N, std::uint64_t n, std::uint64_t k, std::uint64_t m);

/// e_b, or 1/n_sample when e_b is zero.
double substitute_zero_error(double e_b, std::uint64_t n_sample);

/// P_theta_x + P_theta_z in log2, clamped to at most 0. Zero error rates are
/// substituted before evaluation.
double phase_failure_total_log2(const SamplingInput& s);
/// Linear form of phase_failure_total_log2, clamped to at most 1.
double phase_failure_total(const SamplingInput& s);
/// Unclamped linear sum, for diagnostics.
double phase_failure_total_unclamped(const SamplingInput& s);

/// Large-sample form for equal basis sizes (n bits in each basis):
/// 1/(2 sqrt(2 n e(1-e))) * exp(-theta^2 n / (4 e(1-e))).
double gaussian_approx_failure(std::uint64_t n, double e_b, double theta);

struct AzumaBound {
  double deviation;    // (1 + alpha) eps_az
  double prob;         // 4 exp(-n eps_az^2), unclamped
  double prob_single;  // 2 exp(-n eps_az^2 / 2), one martingale
};

/// Martingale bound for the mixed-basis estimator. alpha = 1 for BB84.
AzumaBound azuma_phase_bound(std::uint64_t n, double eps_az, double alpha);

}  // namespace qkdpp
