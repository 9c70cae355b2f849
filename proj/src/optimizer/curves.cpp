#include "qkdpp/optimizer/curves.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "qkdpp/errors.hpp"
#include "qkdpp/optimizer/optimizer.hpp"

namespace qkdpp {
namespace {

void require_nonempty(bool empty, const char* what) {
  if (empty) throw InvalidSpec(std::string("curve: empty grid for ") + what);
}

double rate_of(const OptimizedPlan& p) {
  return p.feasible ? p.nr / static_cast<double>(p.n) : 0.0;
}

}  // namespace

void CurveTable::write_csv(std::ostream& out) const {
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << '\n';
  char buf[64];
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", row[c]);
      out << (c ? "," : "") << buf;
    }
    out << '\n';
  }
}

CurveTable CurveTable::read_csv(std::istream& in) {
  CurveTable t;
  std::string line;
  if (!std::getline(in, line)) return t;
  std::stringstream header(line);
  for (std::string cell; std::getline(header, cell, ',');) t.columns.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::vector<double> row;
    for (std::string cell; std::getline(ss, cell, ',');) row.push_back(std::stod(cell));
    if (row.size() != t.columns.size()) throw InvalidSpec("read_csv: row width does not match header");
    t.rows.push_back(std::move(row));
  }
  return t;
}

CurveTable rate_vs_n(const std::vector<std::uint64_t>& ns, const std::vector<double>& epsilons,
                     const CurveParams& p) {
  require_nonempty(ns.empty() || epsilons.empty(), "rate_vs_n");
  CurveTable t{{"n", "epsilon", "rate", "q_x", "theta_x", "theta_z"}, {}};
  for (double eps : epsilons) {
    for (std::uint64_t n : ns) {
      const OptimizedPlan plan = optimize(n, p.e_bx, p.e_bz, eps, p.f);
      if (plan.feasible) {
        t.rows.push_back({static_cast<double>(n), eps, rate_of(plan), plan.q_x, plan.theta_x, plan.theta_z});
      } else {
        t.rows.push_back({static_cast<double>(n), eps, 0.0, 0.0, 0.0, 0.0});
      }
    }
  }
  return t;
}

std::uint64_t min_feasible_n(double eps, const CurveParams& p, std::uint64_t n_max) {
  auto ok = [&](std::uint64_t n) { return optimize(n, p.e_bx, p.e_bz, eps, p.f).feasible; };
  std::uint64_t lo = 2;
  std::uint64_t hi = 1024;
  while (!ok(hi)) {
    lo = hi;
    if (hi >= n_max) throw Infeasible("min_feasible_n: no positive key up to n_max");
    hi = std::min(n_max, hi * 2);
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (ok(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

CurveTable min_n_vs_eps(const std::vector<double>& epsilons, const CurveParams& p, std::uint64_t n_max) {
  require_nonempty(epsilons.empty(), "min_n_vs_eps");
  CurveTable t{{"epsilon", "min_n"}, {}};
  for (double eps : epsilons) t.rows.push_back({eps, static_cast<double>(min_feasible_n(eps, p, n_max))});
  return t;
}

CurveTable key_vs_bias(std::uint64_t n, double eps, const std::vector<double>& q_grid, const CurveParams& p) {
  require_nonempty(q_grid.empty(), "key_vs_bias");
  CurveTable t{{"q_x", "p_x", "key_length", "theta_x", "theta_z"}, {}};
  for (double q : q_grid) {
    const double px = p_from_q(q);
    const OptimizedPlan plan = optimize_at_bias(n, p.e_bx, p.e_bz, eps, p.f, px);
    t.rows.push_back({q, px, plan.feasible ? plan.nr : 0.0, plan.theta_x, plan.theta_z});
  }
  return t;
}

CurveTable optbias_vs_n(const std::vector<std::uint64_t>& ns, double eps, const CurveParams& p) {
  require_nonempty(ns.empty(), "optbias_vs_n");
  CurveTable t{{"n", "q_x", "p_x", "rate"}, {}};
  for (std::uint64_t n : ns) {
    const OptimizedPlan plan = optimize(n, p.e_bx, p.e_bz, eps, p.f);
    t.rows.push_back({static_cast<double>(n), plan.q_x, plan.p_x, rate_of(plan)});
  }
  return t;
}

}  // namespace qkdpp
