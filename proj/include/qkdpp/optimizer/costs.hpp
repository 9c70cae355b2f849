#pragma once

#include <cstdint>

namespace qkdpp {

/// ceil(-5 log2 eps + 4 log2 n + 50): the aggregate secret-bit budget
/// 2 k_bs + k_ev + k_pa + t_oe. Throws DomainError unless eps in (0,1), n >= 2.
std::int64_t k3_simplified(double eps, std::uint64_t n);

/// log2 A with A = n^2 (n_x + n_z)(n_x + n_z + l - 1).
double a_value_log2(std::uint64_t n, std::uint64_t n_x, std::uint64_t n_z, std::uint64_t l);

struct CostAllocation {
  std::int64_t t_oe = 0;
  std::int64_t k_bs = 0;
  std::int64_t k_ev = 0;
  std::int64_t k_pa = 0;

  [[nodiscard]] std::int64_t total() const noexcept { return 2 * k_bs + k_ev + k_pa + t_oe; }
};

/// Real-valued split of k_3 that equalises the four failure terms:
///   t_oe = k_3/5 - 4/5 - log2(A)/5
///   k_bs = t_oe + 1 + log2 n, k_ev = t_oe + 1 + log2 m, k_pa = t_oe + 1 + log2(m + l - 1)
/// with m = n_x + n_z.
struct RealAllocation {
  double t_oe;
  double k_bs;
  double k_ev;
  double k_pa;
};
RealAllocation allocate_costs_real(std::int64_t k3, std::uint64_t n, std::uint64_t n_x, std::uint64_t n_z,
                                   std::uint64_t l);

/// Integer allocation with total() <= k3. t_oe is floored, each k is the
/// smallest integer keeping its failure term at or below 2^-t_oe, t_oe is
/// lowered while the sum is too large, and leftover bits go to k_pa, k_ev
/// and k_bs in turn. Throws Infeasible if no t_oe >= 1 fits.
CostAllocation allocate_costs(std::int64_t k3, std::uint64_t n, std::uint64_t n_x, std::uint64_t n_z,
                              std::uint64_t l);

/// log2(5 A^(1/5) 2^(-(k3-4)/5)): the four-term failure sum at the real-valued
/// optimum of the allocation.
double epsilon3_log2(std::int64_t k3, double a_log2);

/// Per-step failure terms implied by an integer allocation, in log2:
/// eps_bs = n 2^(1-k_bs) (per message), eps_ev = m 2^(1-k_ev),
/// eps_pa = (m + l - 1) 2^(1-k_pa) + 2^(-t_oe).
struct AllocationFailures {
  double eps_bs_log2;
  double eps_ev_log2;
  double eps_pa_log2;
  /// log2(2 eps_bs + eps_ev + eps_pa)
  [[nodiscard]] double eps3_log2() const;
};
AllocationFailures allocation_failures(const CostAllocation& c, std::uint64_t n, std::uint64_t n_x,
                                       std::uint64_t n_z, std::uint64_t l);

/// Table-level failure terms for one step, log2.
double eps_basis_sift_log2(std::uint64_t n, std::int64_t k_bs);
double eps_error_verify_log2(std::uint64_t m, std::int64_t k_ev);
double eps_privacy_amp_log2(std::uint64_t m, std::uint64_t l, std::int64_t k_pa, std::int64_t t_oe);

}  // namespace qkdpp
