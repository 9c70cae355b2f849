#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qkdpp {

/// Rows of doubles under named columns.
struct CurveTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Header line, then one line per row; numbers printed with %.17g so the
  /// text parses back to the same doubles.
  void write_csv(std::ostream& out) const;
  static CurveTable read_csv(std::istream& in);
};

struct CurveParams {
  double e_bx = 0.04;
  double e_bz = 0.04;
  double f = 1.0;
};

/// Columns n, epsilon, rate, q_x, theta_x, theta_z; rate = NR / n (0 when infeasible).
CurveTable rate_vs_n(const std::vector<std::uint64_t>& ns, const std::vector<double>& epsilons,
                     const CurveParams& p);

/// Smallest n with a positive key, by bisection on optimize's feasibility.
/// Columns epsilon, min_n.
CurveTable min_n_vs_eps(const std::vector<double>& epsilons, const CurveParams& p,
                        std::uint64_t n_max = 4000000000ULL);
std::uint64_t min_feasible_n(double eps, const CurveParams& p, std::uint64_t n_max = 4000000000ULL);

/// NR at fixed bias ratios. Columns q_x, p_x, key_length, theta_x, theta_z.
CurveTable key_vs_bias(std::uint64_t n, double eps, const std::vector<double>& q_grid, const CurveParams& p);

/// Optimal bias per n. Columns n, q_x, p_x, rate.
CurveTable optbias_vs_n(const std::vector<std::uint64_t>& ns, double eps, const CurveParams& p);

}  // namespace qkdpp
