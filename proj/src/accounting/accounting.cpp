#include "qkdpp/accounting/accounting.hpp"

#include <array>
#include <cmath>
#include <string>

#include "qkdpp/errors.hpp"
#include "qkdpp/logmath.hpp"

namespace qkdpp {

double composable_zeta(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw DomainError("composable_zeta: eps = " + std::to_string(eps) + " outside [0,1]");
  if (eps == 0.0) return 0.0;
  return std::exp2(composable_zeta_log2(std::log2(eps)));
}

double composable_zeta_log2(double eps_log2) {
  if (!(eps_log2 <= 0.0)) throw DomainError("composable_zeta_log2: eps above 1");
  if (eps_log2 == logmath::kNegInf) return logmath::kNegInf;
  // log2(2 - eps) = 1 + log2(1 - eps/2)
  const double two_minus = 1.0 + std::log1p(-std::exp2(eps_log2 - 1.0)) / std::log(2.0);
  return 0.5 * (eps_log2 + two_minus);
}

double compose_rounds(double zeta_per_round, std::uint64_t rounds) {
  if (!(zeta_per_round >= 0.0)) throw DomainError("compose_rounds: negative security parameter");
  return std::min(1.0, zeta_per_round * static_cast<double>(rounds));
}

double failure_lower_bound(std::uint64_t k_initial) { return std::exp2(-static_cast<double>(k_initial)); }

double FailureBudget::total_log2() const {
  const std::array<double, 4> terms{eps_bs_log2 + 1.0, eps_ev_log2, eps_ph_log2, eps_pa_log2};
  return logmath::sum(terms);
}

double FailureBudget::eps3_log2() const {
  const std::array<double, 3> terms{eps_bs_log2 + 1.0, eps_ev_log2, eps_pa_log2};
  return logmath::sum(terms);
}

double FailureBudget::total() const { return logmath::to_linear(total_log2()); }
double FailureBudget::eps3() const { return logmath::to_linear(eps3_log2()); }

double FailureBudget::zeta() const {
  const double t = total_log2();
  return t >= 0.0 ? 1.0 : std::exp2(composable_zeta_log2(t));
}

}  // namespace qkdpp
