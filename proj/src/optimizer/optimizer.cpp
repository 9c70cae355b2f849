#include "qkdpp/optimizer/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qkdpp/accounting/accounting.hpp"
#include "qkdpp/bounds/entropy.hpp"
#include "qkdpp/bounds/sampling.hpp"
#include "qkdpp/errors.hpp"
#include "qkdpp/logmath.hpp"

namespace qkdpp {
namespace {

constexpr double kNoKey = -std::numeric_limits<double>::infinity();

struct Problem {
  std::uint64_t n;
  double e_bx;
  double e_bz;
  double eps;
  double eps_log2;
  double f;
  std::int64_t k3;
};

// Best deviations for fixed basis counts.
struct Inner {
  double nr = kNoKey;
  std::uint64_t i = 0;  // theta_x = i / n_z
  std::uint64_t j = 0;  // theta_z = j / n_x
  double px_log2 = 0.0;
  double pz_log2 = 0.0;
};

class CountsSearch {
 public:
  CountsSearch(const Problem& p, std::uint64_t n_x, std::uint64_t n_z)
      : p_(p),
        n_x_(n_x),
        n_z_(n_z),
        ex_(substitute_zero_error(p.e_bx, n_x)),
        ez_(substitute_zero_error(p.e_bz, n_z)),
        i_max_(max_steps(ex_, n_z)),
        j_max_(max_steps(ez_, n_x)) {}

  // Deviations past e + theta = 1/2 cannot shorten the key further.
  static std::uint64_t max_steps(double e, std::uint64_t n) {
    const double nd = static_cast<double>(n);
    return static_cast<std::uint64_t>(std::min(std::ceil(std::max(0.0, 0.5 - e) * nd), std::floor((1.0 - e) * nd)));
  }

  double px_log2(std::uint64_t i) const {
    return phase_sampling_bound_log2(n_x_, n_z_, ex_, static_cast<double>(i) / static_cast<double>(n_z_));
  }
  double pz_log2(std::uint64_t j) const {
    return phase_sampling_bound_log2(n_z_, n_x_, ez_, static_cast<double>(j) / static_cast<double>(n_x_));
  }

  // NR at theta_x = i / n_z with the smallest admissible theta_z.
  Inner at(std::uint64_t i) const {
    Inner r;
    r.i = i;
    r.px_log2 = px_log2(i);
    if (r.px_log2 >= p_.eps_log2) return r;
    const double rem_log2 = std::log2(p_.eps - std::exp2(r.px_log2));
    if (pz_log2(j_max_) > rem_log2) return r;
    std::uint64_t lo = 0;
    std::uint64_t hi = j_max_;
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (pz_log2(mid) <= rem_log2) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    r.j = lo;
    r.pz_log2 = pz_log2(lo);
    // The search runs on the unclamped sum, which is unimodal in theta_x;
    // dropping a negative basis is applied to the optimum afterwards.
    r.nr = objective(i, lo).raw;
    return r;
  }

  KeyLength objective(std::uint64_t i, std::uint64_t j) const {
    return key_length_objective(n_x_, n_z_, ex_, ez_, static_cast<double>(i) / static_cast<double>(n_z_),
                                static_cast<double>(j) / static_cast<double>(n_x_), p_.k3, p_.f);
  }

  Inner best() const {
    if (n_x_ == 0 || n_z_ == 0 || ex_ >= 0.5 || ez_ >= 0.5) return Inner{};
    if (px_log2(i_max_) >= p_.eps_log2) return Inner{};
    // smallest i with P_theta_x below eps
    std::uint64_t lo = 0;
    std::uint64_t hi = i_max_;
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (px_log2(mid) < p_.eps_log2) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    std::uint64_t a = lo;
    std::uint64_t b = i_max_;
    // ternary search on the unimodal profile, then climb to a local maximum
    while (b - a > 8) {
      const std::uint64_t m1 = a + (b - a) / 3;
      const std::uint64_t m2 = b - (b - a) / 3;
      if (at(m1).nr <= at(m2).nr) {
        a = m1 + 1;
      } else {
        b = m2;
      }
    }
    Inner best;
    for (std::uint64_t i = a; i <= b; ++i) {
      const Inner c = at(i);
      if (c.nr > best.nr) best = c;
    }
    if (best.nr == kNoKey) return best;
    for (bool moved = true; moved;) {
      moved = false;
      if (best.i > lo) {
        const Inner c = at(best.i - 1);
        if (c.nr > best.nr) {
          best = c;
          moved = true;
          continue;
        }
      }
      if (best.i < i_max_) {
        const Inner c = at(best.i + 1);
        if (c.nr > best.nr) {
          best = c;
          moved = true;
        }
      }
    }
    return best;
  }

 private:
  const Problem& p_;
  std::uint64_t n_x_;
  std::uint64_t n_z_;
  double ex_;
  double ez_;
  std::uint64_t i_max_;
  std::uint64_t j_max_;
};

std::uint64_t basis_count(std::uint64_t n, double share) {
  return static_cast<std::uint64_t>(std::llround(static_cast<double>(n) * share * share));
}

double p_of_u(double u) { return 1.0 - 0.5 * std::pow(10.0, -u); }

Problem make_problem(std::uint64_t n, double e_bx, double e_bz, double eps, double f) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("optimize: eps must lie in (0,1)");
  if (!(f >= 1.0)) throw DomainError("optimize: f must be at least 1");
  for (double e : {e_bx, e_bz}) {
    if (!(e >= 0.0 && e < 0.5)) throw DomainError("optimize: error rates must lie in [0, 0.5)");
  }
  if (n < 2) throw DomainError("optimize: n must be at least 2");
  return Problem{n, e_bx, e_bz, eps, std::log2(eps), f, k3_simplified(eps, n)};
}

struct BiasResult {
  double p = 0.5;
  std::uint64_t n_x = 0;
  std::uint64_t n_z = 0;
  Inner inner;
};

BiasResult at_bias(const Problem& prob, double p) {
  BiasResult r;
  r.p = p;
  r.n_x = basis_count(prob.n, p);
  r.n_z = basis_count(prob.n, 1.0 - p);
  if (r.n_x >= 1 && r.n_z >= 1) r.inner = CountsSearch(prob, r.n_x, r.n_z).best();
  return r;
}

// Search p_x >= 1/2 for the problem as given.
BiasResult search_bias(const Problem& prob, const OptimizerOptions& opt) {
  const double u_max = 0.5 * std::log10(static_cast<double>(prob.n) / 2.0);
  if (u_max <= 0.0) return at_bias(prob, 0.5);
  auto eval = [&](double u) { return at_bias(prob, p_of_u(std::clamp(u, 0.0, u_max))); };

  const int steps = std::max(1, static_cast<int>(std::ceil(u_max / opt.coarse_step)));
  BiasResult best = eval(0.0);
  int best_k = 0;
  for (int k = 1; k <= steps; ++k) {
    const BiasResult c = eval(std::min(u_max, k * opt.coarse_step));
    if (c.inner.nr > best.inner.nr) {
      best = c;
      best_k = k;
    }
  }
  if (best.inner.nr == kNoKey) return best;

  // golden-section refinement inside the bracketing coarse cells
  double a = std::max(0.0, (best_k - 1) * opt.coarse_step);
  double b = std::min(u_max, (best_k + 1) * opt.coarse_step);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  BiasResult fc = eval(c);
  BiasResult fd = eval(d);
  while (b - a > opt.fine_step) {
    if (fc.inner.nr >= fd.inner.nr) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = eval(d);
    }
  }
  double u_best = best_k * opt.coarse_step;
  for (const auto& [u, r] : {std::pair{c, fc}, std::pair{d, fd}}) {
    if (r.inner.nr > best.inner.nr) {
      best = r;
      u_best = u;
    }
  }

  // hill-climb on the fine grid anchored at u_best
  for (int s = 0; s < opt.max_fine_steps; ++s) {
    const double lo_u = u_best - opt.fine_step;
    const double hi_u = u_best + opt.fine_step;
    bool moved = false;
    if (lo_u >= 0.0) {
      const BiasResult r = eval(lo_u);
      if (r.inner.nr > best.inner.nr) {
        best = r;
        u_best = lo_u;
        moved = true;
      }
    }
    if (!moved && hi_u <= u_max) {
      const BiasResult r = eval(hi_u);
      if (r.inner.nr > best.inner.nr) {
        best = r;
        u_best = hi_u;
        moved = true;
      }
    }
    if (!moved) break;
  }
  return best;
}

OptimizedPlan finish(const Problem& prob, double p_x, std::uint64_t n_x, std::uint64_t n_z, const Inner& in) {
  OptimizedPlan plan;
  plan.n = prob.n;
  plan.e_bx = prob.e_bx;
  plan.e_bz = prob.e_bz;
  plan.eps_target = prob.eps;
  plan.f = prob.f;
  plan.p_x = p_x;
  plan.n_x = n_x;
  plan.n_z = n_z;
  plan.q_x = (n_x + n_z) > 0 ? static_cast<double>(n_x) / static_cast<double>(n_x + n_z) : 0.0;
  plan.k3 = prob.k3;
  plan.asymptotic = asymptotic_key(static_cast<double>(prob.n), prob.e_bx, prob.e_bz);
  plan.nr = in.nr;
  if (in.nr == kNoKey) return plan;

  plan.theta_x_steps = in.i;
  plan.theta_z_steps = in.j;
  plan.theta_x = static_cast<double>(in.i) / static_cast<double>(n_z);
  plan.theta_z = static_cast<double>(in.j) / static_cast<double>(n_x);
  const double ex = substitute_zero_error(prob.e_bx, n_x);
  const double ez = substitute_zero_error(prob.e_bz, n_z);
  const KeyLength kl = key_length_objective(n_x, n_z, ex, ez, plan.theta_x, plan.theta_z, prob.k3, prob.f);
  plan.x_keyed = kl.x_keyed;
  plan.z_keyed = kl.z_keyed;
  plan.nr = kl.nr;
  if (kl.nr <= 0.0) return plan;

  // l and A depend on each other only through log2 A / 5; iterate to a fixed point.
  std::uint64_t l = final_key_length(kl, 0);
  CostAllocation costs;
  for (int it = 0; it < 50; ++it) {
    costs = allocate_costs(prob.k3, prob.n, n_x, n_z, std::max<std::uint64_t>(l, 1));
    const std::uint64_t next = final_key_length(kl, costs.t_oe);
    if (next == l) break;
    l = next;
  }
  plan.l = l;
  plan.costs = costs;
  plan.a_log2 = a_value_log2(prob.n, n_x, n_z, std::max<std::uint64_t>(l, 1));

  double ec = 0.0;
  if (kl.x_keyed) ec += prob.f * static_cast<double>(n_x) * binary_entropy(ex);
  if (kl.z_keyed) ec += prob.f * static_cast<double>(n_z) * binary_entropy(ez);
  plan.k_ec_predicted = static_cast<std::int64_t>(std::ceil(ec));
  plan.net_key = static_cast<std::int64_t>(l) - 2 * costs.k_bs - plan.k_ec_predicted - costs.k_ev - costs.k_pa;

  plan.eps_ph_log2 = logmath::add(in.px_log2, in.pz_log2);
  const AllocationFailures fails = allocation_failures(costs, prob.n, n_x, n_z, l);
  plan.eps_bs_log2 = fails.eps_bs_log2;
  plan.eps_ev_log2 = fails.eps_ev_log2;
  plan.eps_pa_log2 = fails.eps_pa_log2;
  plan.eps3_log2 = fails.eps3_log2();
  plan.eps3_formula_log2 = epsilon3_log2(prob.k3, plan.a_log2);
  const FailureBudget budget{fails.eps_bs_log2, fails.eps_ev_log2, plan.eps_ph_log2, fails.eps_pa_log2};
  plan.eps_final_log2 = budget.total_log2();
  plan.zeta = budget.zeta();
  plan.feasible = true;
  return plan;
}

OptimizedPlan mirrored(OptimizedPlan p) {
  std::swap(p.e_bx, p.e_bz);
  p.p_x = 1.0 - p.p_x;
  std::swap(p.n_x, p.n_z);
  p.q_x = 1.0 - p.q_x;
  std::swap(p.theta_x_steps, p.theta_z_steps);
  std::swap(p.theta_x, p.theta_z);
  std::swap(p.x_keyed, p.z_keyed);
  if (p.n_x + p.n_z > 0) p.q_x = static_cast<double>(p.n_x) / static_cast<double>(p.n_x + p.n_z);
  return p;
}

}  // namespace

KeyLength key_length_objective(std::uint64_t n_x, std::uint64_t n_z, double e_bx, double e_bz, double theta_x,
                               double theta_z, std::int64_t k3, double f) {
  const double nx = static_cast<double>(n_x);
  const double nz = static_cast<double>(n_z);
  // A phase-error rate bound above 1/2 certifies nothing beyond rate 1/2.
  const double x_pa = nx * (1.0 - binary_entropy(std::min(0.5, e_bz + theta_z)));
  const double z_pa = nz * (1.0 - binary_entropy(std::min(0.5, e_bx + theta_x)));
  const double x_net = x_pa - nx * f * binary_entropy(e_bx);
  const double z_net = z_pa - nz * f * binary_entropy(e_bz);
  KeyLength r{0.0, x_net > 0.0, z_net > 0.0, 0.0, x_net + z_net - static_cast<double>(k3)};
  if (r.x_keyed) {
    r.nr += x_net;
    r.pa_input += x_pa;
  }
  if (r.z_keyed) {
    r.nr += z_net;
    r.pa_input += z_pa;
  }
  r.nr -= static_cast<double>(k3);
  return r;
}

std::uint64_t final_key_length(const KeyLength& k, std::int64_t t_oe) {
  const double v = std::floor(k.pa_input - static_cast<double>(t_oe));
  return v > 0.0 ? static_cast<std::uint64_t>(v) : 0;
}

double asymptotic_key(double n, double e_bx, double e_bz) {
  return n * (1.0 - binary_entropy(e_bx) - binary_entropy(e_bz));
}

double p_from_q(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("p_from_q: q outside [0,1]");
  const double a = std::sqrt(q);
  const double b = std::sqrt(1.0 - q);
  return a / (a + b);
}

double q_from_p(double p) { return p * p / (p * p + (1.0 - p) * (1.0 - p)); }

OptimizedPlan optimize(std::uint64_t n, double e_bx, double e_bz, double eps, double f, const OptimizerOptions& options) {
  const Problem prob = make_problem(n, e_bx, e_bz, eps, f);
  const BiasResult r = search_bias(prob, options);
  OptimizedPlan plan = finish(prob, r.p, r.n_x, r.n_z, r.inner);
  if (e_bx != e_bz) {
    // p_x < 1/2: solve the label-swapped problem and swap back
    const Problem swapped = make_problem(n, e_bz, e_bx, eps, f);
    const BiasResult s = search_bias(swapped, options);
    if (s.inner.nr > r.inner.nr) plan = mirrored(finish(swapped, s.p, s.n_x, s.n_z, s.inner));
  }
  return plan;
}

OptimizedPlan optimize_at_bias(std::uint64_t n, double e_bx, double e_bz, double eps, double f, double p_x) {
  if (!(p_x > 0.0 && p_x < 1.0)) throw DomainError("optimize_at_bias: p_x must lie in (0,1)");
  const Problem prob = make_problem(n, e_bx, e_bz, eps, f);
  const BiasResult r = at_bias(prob, p_x);
  return finish(prob, p_x, r.n_x, r.n_z, r.inner);
}

OptimizedPlan optimize_for_counts(std::uint64_t n, std::uint64_t n_x, std::uint64_t n_z, double e_bx, double e_bz,
                                  double eps, double f) {
  const Problem prob = make_problem(n, e_bx, e_bz, eps, f);
  Inner in;
  if (n_x >= 1 && n_z >= 1) in = CountsSearch(prob, n_x, n_z).best();
  const double share = (n_x + n_z) > 0 ? static_cast<double>(n_x) / static_cast<double>(n_x + n_z) : 0.5;
  return finish(prob, p_from_q(share), n_x, n_z, in);
}

}  // namespace qkdpp
