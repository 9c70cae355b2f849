#include "qkdpp/bounds/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qkdpp/bounds/entropy.hpp"
#include "qkdpp/errors.hpp"
#include "qkdpp/logmath.hpp"

namespace qkdpp {

void SamplingInput::validate() const {
  if (n_x < 1 || n_z < 1) throw DomainError("SamplingInput: basis counts must be at least 1");
  for (double e : {e_bx, e_bz}) {
    if (!(e >= 0.0 && e <= 1.0)) throw DomainError("SamplingInput: error rate outside [0,1]");
  }
  if (!(theta_x >= 0.0) || !(theta_z >= 0.0)) throw DomainError("SamplingInput: negative deviation");
  if (e_bx + theta_x > 1.0 || e_bz + theta_z > 1.0) throw DomainError("SamplingInput: e_b + theta exceeds 1");
}

double phase_sampling_bound_log2(std::uint64_t n_sample, std::uint64_t n_target, double e_b, double theta) {
  if (n_sample < 1 || n_target < 1) throw DomainError("phase_sampling_bound_log2: counts must be at least 1");
  if (!(e_b > 0.0 && e_b < 1.0)) {
    throw DomainError("phase_sampling_bound_log2: e_b = " + std::to_string(e_b) +
                      " must lie in (0,1); substitute 1/n for a zero error count");
  }
  const double ns = static_cast<double>(n_sample);
  const double nt = static_cast<double>(n_target);
  const double N = ns + nt;
  const double q = ns / N;
  const double prefactor = 0.5 * (std::log2(N) - std::log2(e_b) - std::log2(1.0 - e_b) - std::log2(ns) - std::log2(nt));
  return prefactor - N * xi(e_b, q, theta);
}

double sampling_bound_counts_log2(std::uint64_t N, std::uint64_t n, std::uint64_t k, std::uint64_t m) {
  if (n == 0 || n >= N) throw DomainError("sampling_bound_counts_log2: need 0 < n < N");
  if (m > N || k > n || k > m || m - k > N - n) throw DomainError("sampling_bound_counts_log2: impossible counts");
  const std::uint64_t kk = std::max<std::uint64_t>(k, 1);
  if (kk >= n || kk > m) throw DomainError("sampling_bound_counts_log2: need k < n and k <= m");
  const double e = static_cast<double>(kk) / static_cast<double>(n);
  const double ep = static_cast<double>(m - kk) / static_cast<double>(N - n);
  return phase_sampling_bound_log2(n, N - n, e, ep - e);
}

double substitute_zero_error(double e_b, std::uint64_t n_sample) {
  return e_b == 0.0 ? 1.0 / static_cast<double>(n_sample) : e_b;
}

namespace {

// Each term is computed at the substituted rate. theta is kept as given:
// substitution only moves e_b, the caller's target e_b + theta moves with it.
double px_log2(const SamplingInput& s) {
  return phase_sampling_bound_log2(s.n_x, s.n_z, substitute_zero_error(s.e_bx, s.n_x), s.theta_x);
}
double pz_log2(const SamplingInput& s) {
  return phase_sampling_bound_log2(s.n_z, s.n_x, substitute_zero_error(s.e_bz, s.n_z), s.theta_z);
}

}  // namespace

double phase_failure_total_log2(const SamplingInput& s) {
  s.validate();
  return std::min(0.0, logmath::add(px_log2(s), pz_log2(s)));
}

double phase_failure_total(const SamplingInput& s) { return logmath::to_linear(phase_failure_total_log2(s)); }

double phase_failure_total_unclamped(const SamplingInput& s) {
  s.validate();
  return std::exp2(px_log2(s)) + std::exp2(pz_log2(s));
}

double gaussian_approx_failure(std::uint64_t n, double e_b, double theta) {
  if (n < 1) throw DomainError("gaussian_approx_failure: n must be at least 1");
  if (!(e_b > 0.0 && e_b < 1.0)) throw DomainError("gaussian_approx_failure: e_b must lie in (0,1)");
  const double v = e_b * (1.0 - e_b);
  const double nd = static_cast<double>(n);
  return std::exp(-theta * theta * nd / (4.0 * v)) / (2.0 * std::sqrt(2.0 * nd * v));
}

AzumaBound azuma_phase_bound(std::uint64_t n, double eps_az, double alpha) {
  if (n < 1) throw DomainError("azuma_phase_bound: n must be at least 1");
  if (!(eps_az >= 0.0)) throw DomainError("azuma_phase_bound: eps_az must be nonnegative");
  if (!(alpha >= 1.0)) throw DomainError("azuma_phase_bound: alpha must be at least 1");
  const double x = static_cast<double>(n) * eps_az * eps_az;
  return AzumaBound{(1.0 + alpha) * eps_az, 4.0 * std::exp(-x), 2.0 * std::exp(-x / 2.0)};
}

}  // namespace qkdpp
