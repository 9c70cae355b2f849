#include "qkdpp/optimizer/costs.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qkdpp/errors.hpp"
#include "qkdpp/logmath.hpp"

namespace qkdpp {
namespace {

double lg(std::uint64_t v) { return std::log2(static_cast<double>(v)); }

std::int64_t ceil_int(double x) {
  // Guard against log2 of exact powers of two landing a hair above the integer.
  const double r = std::round(x);
  if (std::abs(x - r) < 1e-9) return static_cast<std::int64_t>(r);
  return static_cast<std::int64_t>(std::ceil(x));
}

}  // namespace

std::int64_t k3_simplified(double eps, std::uint64_t n) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("k3_simplified: eps must lie in (0,1)");
  if (n < 2) throw DomainError("k3_simplified: n must be at least 2");
  return ceil_int(-5.0 * std::log2(eps) + 4.0 * lg(n) + 50.0);
}

double a_value_log2(std::uint64_t n, std::uint64_t n_x, std::uint64_t n_z, std::uint64_t l) {
  const std::uint64_t m = n_x + n_z;
  if (n == 0 || m == 0) throw DomainError("a_value_log2: counts must be positive");
  return 2.0 * lg(n) + lg(m) + std::log2(std::max(1.0, static_cast<double>(m) + static_cast<double>(l) - 1.0));
}

RealAllocation allocate_costs_real(std::int64_t k3, std::uint64_t n, std::uint64_t n_x, std::uint64_t n_z,
                                   std::uint64_t l) {
  const std::uint64_t m = n_x + n_z;
  const double t = static_cast<double>(k3) / 5.0 - 0.8 - a_value_log2(n, n_x, n_z, l) / 5.0;
  return RealAllocation{t, t + 1.0 + lg(n), t + 1.0 + lg(m),
                        t + 1.0 + std::log2(std::max(1.0, static_cast<double>(m) + static_cast<double>(l) - 1.0))};
}

CostAllocation allocate_costs(std::int64_t k3, std::uint64_t n, std::uint64_t n_x, std::uint64_t n_z,
                              std::uint64_t l) {
  if (n < 1 || n_x + n_z < 1) throw DomainError("allocate_costs: counts must be positive");
  const std::uint64_t m = n_x + n_z;
  const double lm_pa = std::log2(std::max(1.0, static_cast<double>(m) + static_cast<double>(l) - 1.0));
  const RealAllocation real = allocate_costs_real(k3, n, n_x, n_z, l);

  CostAllocation c;
  for (std::int64_t t = static_cast<std::int64_t>(std::floor(real.t_oe)); t >= 1; --t) {
    c.t_oe = t;
    c.k_bs = ceil_int(static_cast<double>(t) + 1.0 + lg(n));
    c.k_ev = ceil_int(static_cast<double>(t) + 1.0 + lg(m));
    c.k_pa = ceil_int(static_cast<double>(t) + 1.0 + lm_pa);
    if (c.total() <= k3) break;
  }
  if (c.t_oe < 1 || c.total() > k3) {
    throw Infeasible("allocate_costs: k3 = " + std::to_string(k3) + " leaves no positive t_oe");
  }
  std::int64_t rest = k3 - c.total();
  for (int turn = 0; rest > 0; turn = (turn + 1) % 3) {
    if (turn == 0) {
      ++c.k_pa;
      --rest;
    } else if (turn == 1) {
      ++c.k_ev;
      --rest;
    } else if (rest >= 2) {
      ++c.k_bs;
      rest -= 2;
    }
  }
  return c;
}

double epsilon3_log2(std::int64_t k3, double a_log2) {
  return std::log2(5.0) + a_log2 / 5.0 - static_cast<double>(k3 - 4) / 5.0;
}

double eps_basis_sift_log2(std::uint64_t n, std::int64_t k_bs) { return lg(n) + 1.0 - static_cast<double>(k_bs); }

double eps_error_verify_log2(std::uint64_t m, std::int64_t k_ev) { return lg(m) + 1.0 - static_cast<double>(k_ev); }

double eps_privacy_amp_log2(std::uint64_t m, std::uint64_t l, std::int64_t k_pa, std::int64_t t_oe) {
  const double tag = std::log2(std::max(1.0, static_cast<double>(m) + static_cast<double>(l) - 1.0)) + 1.0 - static_cast<double>(k_pa);
  return logmath::add(tag, -static_cast<double>(t_oe));
}

double AllocationFailures::eps3_log2() const {
  const std::array<double, 3> terms{eps_bs_log2 + 1.0, eps_ev_log2, eps_pa_log2};
  return logmath::sum(terms);
}

AllocationFailures allocation_failures(const CostAllocation& c, std::uint64_t n, std::uint64_t n_x,
                                       std::uint64_t n_z, std::uint64_t l) {
  const std::uint64_t m = n_x + n_z;
  return AllocationFailures{eps_basis_sift_log2(n, c.k_bs), eps_error_verify_log2(m, c.k_ev),
                            eps_privacy_amp_log2(m, l, c.k_pa, c.t_oe)};
}

}  // namespace qkdpp
