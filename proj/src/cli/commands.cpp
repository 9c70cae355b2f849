#include "qkdpp/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "qkdpp/accounting/accounting.hpp"
#include "qkdpp/bounds/entropy.hpp"
#include "qkdpp/bounds/hypergeometric.hpp"
#include "qkdpp/bounds/patterns.hpp"
#include "qkdpp/bounds/sampling.hpp"
#include "qkdpp/cli/config.hpp"
#include "qkdpp/cli/json_io.hpp"
#include "qkdpp/errors.hpp"
#include "qkdpp/optimizer/costs.hpp"
#include "qkdpp/optimizer/curves.hpp"
#include "qkdpp/protocol/tcp_channel.hpp"

namespace qkdpp::cli {
namespace {

using nlohmann::json;

std::shared_ptr<spdlog::logger> logger() {
  static const std::shared_ptr<spdlog::logger> log = [] {
    auto l = std::make_shared<spdlog::logger>("qkdpp", std::make_shared<spdlog::sinks::stderr_sink_mt>());
    l->set_pattern("[%l] %v");
    const char* env = std::getenv("QKDD_LOG");
    l->set_level(env != nullptr ? spdlog::level::from_str(env) : spdlog::level::warn);
    return l;
  }();
  return log;
}

std::string fmt_g(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write output file '" + path + "'");
  f << text;
}

// Result text goes to --out when given, else to `out`.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file(path, text);
  }
}

struct Flags {
  std::string config;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
  std::string transport;
  std::string listen;
  std::string connect;
  std::string role;
  std::string fault;
  std::string transcript;
  std::string plan;
};

RunConfig load_with_flags(const Flags& f) {
  RunConfig rc = load_config(f.config);
  if (!f.out.empty()) rc.out = f.out;
  if (!f.format.empty()) rc.format = f.format;
  if (f.seed) {
    rc.session.rng_seed_alice = *f.seed;
    rc.session.rng_seed_bob = *f.seed + 1;
    rc.session.rng_seed_channel = *f.seed + 2;
    rc.session.rng_seed_pool = *f.seed + 3;
  }
  if (!f.transport.empty()) rc.transport = f.transport;
  if (!f.listen.empty()) rc.listen = f.listen;
  if (!f.connect.empty()) rc.connect = f.connect;
  if (!f.role.empty()) rc.role = f.role;
  if (!f.fault.empty()) rc.fault = fault_from_name(f.fault);
  if (!f.transcript.empty()) rc.transcript = f.transcript;
  if (!f.plan.empty()) rc.plan = f.plan;
  return rc;
}

std::string summary(const OptimizedPlan& p) {
  std::ostringstream s;
  s << "n = " << p.n << ", e_bx = " << fmt_g(p.e_bx) << ", e_bz = " << fmt_g(p.e_bz)
    << ", eps = " << fmt_g(p.eps_target) << ", f = " << fmt_g(p.f) << '\n';
  if (!p.feasible) {
    s << "infeasible: no basis bias gives a positive key\n";
    return s.str();
  }
  s << "bias: p_x = " << fmt_g(p.p_x) << ", q_x = " << fmt_g(p.q_x) << " (n_x = " << p.n_x << ", n_z = " << p.n_z
    << ")\n";
  s << "deviations: theta_x = " << fmt_g(100 * p.theta_x, 4) << "%, theta_z = " << fmt_g(100 * p.theta_z, 4)
    << "%\n";
  s << "k3 = " << p.k3 << " bits (t_oe = " << p.costs.t_oe << ", k_bs = " << p.costs.k_bs << ", k_ev = " << p.costs.k_ev
    << ", k_pa = " << p.costs.k_pa << ")\n";
  s << "final key l = " << p.l << ", NR = " << fmt_g(p.nr, 8) << '\n';
  s << "epsilon_final = " << fmt_g(std::exp2(p.eps_final_log2)) << " (epsilon_3 = " << fmt_g(std::exp2(p.eps3_log2))
    << ", epsilon_ph = " << fmt_g(std::exp2(p.eps_ph_log2)) << "), zeta = " << fmt_g(p.zeta, 5) << '\n';
  s << "asymptotic key " << fmt_g(p.asymptotic, 6) << " vs finite key " << fmt_g(p.nr, 6) << " ("
    << fmt_g(100 * p.nr / p.asymptotic, 4) << "%)\n";
  return s.str();
}

int cmd_optimize(const Flags& f, std::ostream& out, std::ostream& err) {
  const RunConfig rc = load_with_flags(f);
  const SessionParams& s = rc.session;
  logger()->info("optimizing n={} e_bx={} e_bz={} eps={}", rc.plan_n(), s.e_bx, s.e_bz, s.eps_target);
  if (rc.plan_n() < 2) throw ConfigError("planning length n must be at least 2 (set 'n' or N and eta)");
  const OptimizedPlan plan = optimize(rc.plan_n(), s.e_bx, s.e_bz, s.eps_target, s.f_ec);
  emit(rc.out, plan_to_json(plan).dump(2) + "\n", out);
  (rc.out.empty() ? err : out) << summary(plan);
  return plan.feasible ? kOk : kInfeasible;
}

OptimizedPlan plan_for(RunConfig& rc) {
  OptimizedPlan plan;
  if (!rc.plan.empty()) {
    std::ifstream in(rc.plan);
    if (!in) throw ConfigError("cannot open plan file '" + rc.plan + "'");
    try {
      plan = plan_from_json(json::parse(in));
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("plan file is not valid JSON: ") + e.what());
    }
  } else {
    if (rc.plan_n() < 2) throw ConfigError("planning length n must be at least 2 (set 'n' or N and eta)");
    plan = optimize(rc.plan_n(), rc.session.e_bx, rc.session.e_bz, rc.session.eps_target, rc.session.f_ec);
  }
  if (!plan.feasible) throw Infeasible("no positive key for n = " + std::to_string(plan.n));
  if (!rc.p_x_given) rc.session.p_x = plan.p_x;
  return plan;
}

int cmd_simulate(const Flags& f, std::ostream& out, std::ostream& err) {
  RunConfig rc = load_with_flags(f);
  const OptimizedPlan plan = plan_for(rc);
  rc.session.validate();
  logger()->info("simulating N={} eta={} p_x={} transport={}", rc.session.N, rc.session.eta, rc.session.p_x,
                 rc.transport);

  if (rc.transport == "inmem") {
    SessionOptions opts;
    opts.tamper = rc.fault;
    const SessionResult r = run_session(rc.session, plan, opts);
    emit(rc.out, session_to_json(r, plan).dump(2) + "\n", out);
    if (!rc.transcript.empty()) {
      write_file(rc.transcript, "# alice\n" + transcript_dump(r.alice.transcript) + "# bob\n" +
                                    transcript_dump(r.bob.transcript));
    }
    if (r.aborted) {
      err << "aborted at step " << r.abort_step << ": " << r.abort_reason << '\n';
      return kAbort;
    }
    logger()->info("session done: l={} net={} eps={}", r.l, r.net_key, std::exp2(r.eps_log2));
    return kOk;
  }

  // tcp: one party per process
  if (rc.role.empty()) throw ConfigError("tcp transport needs --role alice|bob");
  const Role role = rc.role == "alice" ? Role::Alice : Role::Bob;
  const QuantumRecords rec = simulate_quantum_phase(rc.session);
  PartyOutcome o;
  if (role == Role::Alice) {
    if (rc.connect.empty()) throw ConfigError("alice needs --connect HOST:PORT");
    const auto [host, port] = parse_address(rc.connect);
    TcpChannel ch = TcpChannel::connect(host, port);
    if (rc.fault) {
      TamperingChannel mitm(ch, *rc.fault);
      o = run_party(role, mitm, rc.session, plan, rec);
    } else {
      o = run_party(role, ch, rc.session, plan, rec);
    }
  } else {
    if (rc.listen.empty()) throw ConfigError("bob needs --listen HOST:PORT");
    const auto [host, port] = parse_address(rc.listen);
    TcpListener listener(host, port);
    logger()->info("bob listening on {}:{}", host, listener.port());
    TcpChannel ch = listener.accept();
    o = run_party(role, ch, rc.session, plan, rec);
  }
  json j{{"plan", plan_to_json(plan)}, {"party", party_to_json(o)}};
  emit(rc.out, j.dump(2) + "\n", out);
  if (!rc.transcript.empty()) write_file(rc.transcript, transcript_dump(o.transcript));
  if (o.aborted) {
    err << "aborted at step " << o.abort_step << ": " << o.abort_reason << '\n';
    return kAbort;
  }
  return kOk;
}

int cmd_curve(const Flags& f, std::ostream& out, std::ostream&) {
  const RunConfig rc = load_with_flags(f);
  if (!rc.curve) throw ConfigError("missing required field 'curve'");
  const CurveConfig& c = *rc.curve;
  const CurveParams p{rc.session.e_bx, rc.session.e_bz, rc.session.f_ec};
  CurveTable t;
  if (c.kind == "rate_vs_n") {
    t = rate_vs_n(c.ns, c.epsilons, p);
  } else if (c.kind == "min_n_vs_eps") {
    t = min_n_vs_eps(c.epsilons, p, c.n_max);
  } else if (c.kind == "key_vs_bias") {
    t = key_vs_bias(c.n, c.eps, c.q_grid, p);
  } else {
    t = optbias_vs_n(c.ns, c.eps, p);
  }
  if (rc.format == "json") {
    emit(rc.out, curve_to_json(t).dump(2) + "\n", out);
  } else {
    std::ostringstream s;
    t.write_csv(s);
    emit(rc.out, s.str(), out);
  }
  return kOk;
}

// Each bounds formula is a nested subcommand that fills `result`.
void add_bounds(CLI::App& bounds, json& result) {
  const auto sub = [&](const char* name, const char* desc) {
    CLI::App* s = bounds.add_subcommand(name, desc);
    return s;
  };
  const auto log2_pair = [](json& j, const std::string& key, double v) {
    j[key] = std::exp2(v);
    j[key + "_log2"] = v;
  };

  static double p = 0, e = 0, q = 0, theta = 0, eps = 0, ebx = 0, ebz = 0, tx = 0, tz = 0, alpha = 1, a_log2 = 0;
  static std::uint64_t n = 0, n_s = 0, n_t = 0, big_n = 0, k = 0, m = 0, nx = 0, nz = 0;
  static std::int64_t k3 = 0;

  CLI::App* s = sub("entropy", "binary entropy H(p)");
  s->add_option("--p", p)->required();
  s->callback([&] { result = {{"binary_entropy", binary_entropy(p)}}; });

  s = sub("xi", "exponent H(e + theta - q theta) - q H(e) - (1-q) H(e + theta)");
  s->add_option("--e", e)->required();
  s->add_option("--q", q)->required();
  s->add_option("--theta", theta)->required();
  s->callback([&] { result = {{"xi", xi(e, q, theta)}}; });

  s = sub("sampling", "phase sampling bound for one basis");
  s->add_option("--n-sample", n_s)->required();
  s->add_option("--n-target", n_t)->required();
  s->add_option("--e", e)->required();
  s->add_option("--theta", theta)->required();
  s->callback([&] {
    result = json::object();
    log2_pair(result, "p_theta", phase_sampling_bound_log2(n_s, n_t, e, theta));
  });

  s = sub("counts", "closed-form bound against the exact hypergeometric probability");
  s->add_option("--N", big_n)->required();
  s->add_option("--n", n)->required();
  s->add_option("--k", k)->required();
  s->add_option("--m", m)->required();
  s->callback([&] {
    result = json::object();
    log2_pair(result, "bound", sampling_bound_counts_log2(big_n, n, k, m));
    result["hypergeometric_exact"] = hypergeometric_tail_exact(big_n, n, k, m);
  });

  s = sub("phase-total", "P_theta_x + P_theta_z");
  s->add_option("--n-x", nx)->required();
  s->add_option("--n-z", nz)->required();
  s->add_option("--e-bx", ebx)->required();
  s->add_option("--e-bz", ebz)->required();
  s->add_option("--theta-x", tx)->required();
  s->add_option("--theta-z", tz)->required();
  s->callback([&] {
    result = json::object();
    log2_pair(result, "p_total", phase_failure_total_log2(SamplingInput{nx, nz, ebx, ebz, tx, tz}));
  });

  s = sub("gaussian", "large-n approximation of the phase failure");
  s->add_option("--n", n)->required();
  s->add_option("--e", e)->required();
  s->add_option("--theta", theta)->required();
  s->callback([&] { result = {{"gaussian_approx_failure", gaussian_approx_failure(n, e, theta)}}; });

  s = sub("azuma", "martingale bound for the mixed-basis estimator");
  s->add_option("--n", n)->required();
  s->add_option("--eps-az", eps)->required();
  s->add_option("--alpha", alpha);
  s->callback([&] {
    const AzumaBound b = azuma_phase_bound(n, eps, alpha);
    result = {{"deviation", b.deviation}, {"prob", b.prob}, {"prob_single", b.prob_single}};
  });

  s = sub("patterns", "log2 of the number of phase-error patterns");
  s->add_option("--n", n)->required();
  s->add_option("--e", e)->required();
  s->add_option("--theta", theta)->required();
  s->callback([&] {
    result = {{"count_log2", phase_pattern_count_log2(n, e, theta)},
              {"count_exact_log2", phase_pattern_count_exact_log2(n, e, theta)}};
  });

  s = sub("zeta", "composable security parameter sqrt(eps (2 - eps))");
  s->add_option("--eps", eps)->required();
  s->callback([&] { result = {{"zeta", composable_zeta(eps)}}; });

  s = sub("k3", "aggregate secret-key cost -5 log2 eps + 4 log2 n + 50, rounded up");
  s->add_option("--eps", eps)->required();
  s->add_option("--n", n)->required();
  s->callback([&] {
    result = {{"k3", k3_simplified(eps, n)},
              {"k3_exact", -5.0 * std::log2(eps) + 4.0 * std::log2(static_cast<double>(n)) + 50.0}};
  });

  s = sub("epsilon3", "5 A^(1/5) 2^(-(k3-4)/5)");
  s->add_option("--k3", k3)->required();
  s->add_option("--a-log2", a_log2)->required();
  s->callback([&] {
    result = json::object();
    log2_pair(result, "epsilon_3", epsilon3_log2(k3, a_log2));
  });

  s = sub("asymptotic", "n [1 - H(e_bx) - H(e_bz)]");
  s->add_option("--n", n)->required();
  s->add_option("--e-bx", ebx)->required();
  s->add_option("--e-bz", ebz)->required();
  s->callback([&] { result = {{"asymptotic_key", asymptotic_key(static_cast<double>(n), ebx, ebz)}}; });
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-key QKD post-processing: optimizer, session simulator, curves and bounds"};
  app.require_subcommand(1);
  Flags f;
  std::function<int()> action;

  CLI::App* opt = app.add_subcommand("optimize", "optimize bias, deviations and cost allocation");
  opt->add_option("--config", f.config, "JSON run configuration")->required();
  opt->add_option("--out", f.out, "write the plan JSON here");
  opt->callback([&] { action = [&] { return cmd_optimize(f, out, err); }; });

  CLI::App* sim = app.add_subcommand("simulate", "plan, simulate the quantum phase and run the session");
  sim->add_option("--config", f.config, "JSON run configuration")->required();
  sim->add_option("--seed", f.seed, "derive all four generator seeds from this value");
  sim->add_option("--out", f.out, "write the result JSON here");
  sim->add_option("--transport", f.transport, "inmem or tcp")->check(CLI::IsMember({"inmem", "tcp"}));
  sim->add_option("--listen", f.listen, "HOST:PORT for bob in tcp mode");
  sim->add_option("--connect", f.connect, "HOST:PORT for alice in tcp mode");
  sim->add_option("--role", f.role, "alice or bob (tcp mode)")->check(CLI::IsMember({"alice", "bob"}));
  sim->add_option("--inject-fault", f.fault, "flip a bit in Alice's frames: basis_sift, ev_tag or pa_seed");
  sim->add_option("--transcript", f.transcript, "write a frame-by-frame transcript here");
  sim->add_option("--plan", f.plan, "use this plan JSON instead of optimizing");
  sim->callback([&] { action = [&] { return cmd_simulate(f, out, err); }; });

  CLI::App* cur = app.add_subcommand("curve", "tabulate key rate, minimum n or bias curves");
  cur->add_option("--config", f.config, "JSON run configuration with a 'curve' object")->required();
  cur->add_option("--out", f.out, "write the table here");
  cur->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cur->callback([&] { action = [&] { return cmd_curve(f, out, err); }; });

  CLI::App* bnd = app.add_subcommand("bounds", "evaluate one bound formula and print JSON");
  bnd->require_subcommand(1);
  json bounds_result;
  add_bounds(*bnd, bounds_result);
  bnd->final_callback([&] {
    action = [&] {
      out << bounds_result.dump(2) << '\n';
      return static_cast<int>(kOk);
    };
  });

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      if (e.get_exit_code() == 0) {
        out << app.help();
        return kOk;
      }
      err << "error: " << e.what() << '\n';
      return kConfig;
    }
    return action ? action() : static_cast<int>(kOk);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const InvalidSpec& e) {
    err << "invalid input: " << e.what() << '\n';
    return kConfig;
  } catch (const DomainError& e) {
    err << "out of domain: " << e.what() << '\n';
    return kConfig;
  } catch (const DimensionError& e) {
    err << "dimension error: " << e.what() << '\n';
    return kConfig;
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace qkdpp::cli
