#pragma once

#include <cstdint>

#include "qkdpp/optimizer/costs.hpp"

namespace qkdpp {

/// Net key length NR = sum over keyed bases of n_b [1 - f H(e_b) - H(e_other + theta_other)] - k3.
/// A basis whose bracket is negative is not keyed (its bits serve only for
/// estimation) and contributes nothing.
struct KeyLength {
  double nr;
  bool x_keyed;
  bool z_keyed;
  /// sum over keyed bases of n_b [1 - H(e_other + theta_other)], before t_oe.
  double pa_input;
  /// Both bases counted as they are, negative terms included.
  double raw;
};
KeyLength key_length_objective(std::uint64_t n_x, std::uint64_t n_z, double e_bx, double e_bz, double theta_x,
                               double theta_z, std::int64_t k3, double f);

/// Final key length floor(pa_input - t_oe), never negative.
std::uint64_t final_key_length(const KeyLength& k, std::int64_t t_oe);

/// n [1 - H(e_bx) - H(e_bz)], unclamped.
double asymptotic_key(double n, double e_bx, double e_bz);

struct OptimizerOptions {
  double coarse_step = 0.02;  // in u, where p_x = 1 - 0.5 * 10^-u
  double fine_step = 1e-4;    // final hill-climb step in u
  int max_fine_steps = 20000;
};

struct OptimizedPlan {
  bool feasible = false;

  // inputs
  std::uint64_t n = 0;
  double e_bx = 0.0;
  double e_bz = 0.0;
  double eps_target = 0.0;
  double f = 1.0;

  // bias
  double p_x = 0.5;
  double q_x = 0.5;
  std::uint64_t n_x = 0;
  std::uint64_t n_z = 0;

  // deviations: theta_x = theta_x_steps / n_z, theta_z = theta_z_steps / n_x
  std::uint64_t theta_x_steps = 0;
  std::uint64_t theta_z_steps = 0;
  double theta_x = 0.0;
  double theta_z = 0.0;
  bool x_keyed = false;
  bool z_keyed = false;

  // costs
  std::int64_t k3 = 0;
  CostAllocation costs;
  double a_log2 = 0.0;
  std::uint64_t l = 0;
  std::int64_t k_ec_predicted = 0;
  double nr = 0.0;              // objective value
  std::int64_t net_key = 0;     // l - 2 k_bs - k_ec - k_ev - k_pa with the predicted k_ec

  // failure probabilities, log2
  double eps_ph_log2 = 0.0;
  double eps_bs_log2 = 0.0;
  double eps_ev_log2 = 0.0;
  double eps_pa_log2 = 0.0;
  double eps3_log2 = 0.0;          // from the integer allocation
  double eps3_formula_log2 = 0.0;  // 5 A^(1/5) 2^(-(k3-4)/5)
  double eps_final_log2 = 0.0;     // eps3 + eps_ph
  double zeta = 0.0;

  double asymptotic = 0.0;
};

/// Maximises NR over the basis bias and both deviations subject to
/// P_theta_x + P_theta_z <= eps, then allocates k3 and recomputes the total
/// failure probability. The search maximises the unclamped two-basis sum; a
/// basis whose term is negative at the optimum is then used for estimation only. Basis counts are n_x = round(n p_x^2),
/// n_z = round(n (1-p_x)^2). Returns feasible = false when no bias gives NR > 0.
OptimizedPlan optimize(std::uint64_t n, double e_bx, double e_bz, double eps, double f,
                       const OptimizerOptions& options = {});

/// Same as optimize with p_x held fixed.
OptimizedPlan optimize_at_bias(std::uint64_t n, double e_bx, double e_bz, double eps, double f, double p_x);

/// Plan for realized counts: best deviations and allocation for given n_x, n_z.
OptimizedPlan optimize_for_counts(std::uint64_t n, std::uint64_t n_x, std::uint64_t n_z, double e_bx, double e_bz,
                                  double eps, double f);

/// p_x giving bias ratio q = p^2 / (p^2 + (1-p)^2).
double p_from_q(double q);
double q_from_p(double p);

}  // namespace qkdpp
