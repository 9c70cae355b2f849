#include "qkdpp/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qkdpp/errors.hpp"

namespace qkdpp::cli {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + where + key + "'");
  }
}

double number(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError("field '" + where + key + "' must be a number");
  return v.get<double>();
}

std::uint64_t count(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
  // 1e5 style literals are accepted when integral
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d >= 0.0 && d < 1.8e19 && std::floor(d) == d) return static_cast<std::uint64_t>(d);
  }
  throw ConfigError("field '" + where + key + "' must be a non-negative integer");
}

std::string text(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError("field '" + where + key + "' must be a string");
  return v.get<std::string>();
}

void require(const json& obj, const std::vector<std::string>& keys, const std::string& where) {
  for (const auto& k : keys) {
    if (!obj.contains(k)) throw ConfigError("missing required field '" + where + k + "'");
  }
}

void probability(double v, const std::string& name) {
  if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("field '" + name + "' must lie in [0,1]");
}

CurveConfig parse_curve(const json& c) {
  if (!c.is_object()) throw ConfigError("field 'curve' must be an object");
  const std::string w = "curve.";
  reject_unknown(c, {"kind", "ns", "epsilons", "q_grid", "n", "eps", "n_max"}, w);
  require(c, {"kind"}, w);
  CurveConfig cc;
  cc.kind = text(c, "kind", w);
  const auto list = [&](const std::string& key, auto conv) {
    if (!c.contains(key)) return;
    if (!c.at(key).is_array()) throw ConfigError("field '" + w + key + "' must be an array");
    for (const json& x : c.at(key)) {
      if (!x.is_number()) throw ConfigError("field '" + w + key + "' must hold numbers");
      conv(x);
    }
  };
  list("ns", [&](const json& x) {
    const double d = x.get<double>();
    if (!(d >= 2.0 && d < 1.8e19) || std::floor(d) != d) throw ConfigError("field 'curve.ns' must hold integers >= 2");
    cc.ns.push_back(x.is_number_integer() ? x.get<std::uint64_t>() : static_cast<std::uint64_t>(d));
  });
  list("epsilons", [&](const json& x) { cc.epsilons.push_back(x.get<double>()); });
  list("q_grid", [&](const json& x) { cc.q_grid.push_back(x.get<double>()); });
  if (c.contains("n")) cc.n = count(c, "n", w);
  if (c.contains("eps")) cc.eps = number(c, "eps", w);
  if (c.contains("n_max")) cc.n_max = count(c, "n_max", w);
  for (double e : cc.epsilons) {
    if (!(e > 0.0 && e < 1.0)) throw ConfigError("field 'curve.epsilons' must hold values in (0,1)");
  }
  for (double q : cc.q_grid) probability(q, "curve.q_grid");

  const auto need = [&](bool ok, const std::string& field) {
    if (!ok) throw ConfigError("missing required field 'curve." + field + "' for kind " + cc.kind);
  };
  if (cc.kind == "rate_vs_n") {
    need(c.contains("ns"), "ns");
    need(c.contains("epsilons"), "epsilons");
  } else if (cc.kind == "min_n_vs_eps") {
    need(c.contains("epsilons"), "epsilons");
  } else if (cc.kind == "key_vs_bias") {
    need(c.contains("n"), "n");
    need(c.contains("eps"), "eps");
    need(c.contains("q_grid"), "q_grid");
  } else if (cc.kind == "optbias_vs_n") {
    need(c.contains("ns"), "ns");
    need(c.contains("eps"), "eps");
  } else {
    throw ConfigError("field 'curve.kind' must be one of rate_vs_n, min_n_vs_eps, key_vs_bias, optbias_vs_n");
  }
  if (c.contains("eps") && !(cc.eps > 0.0 && cc.eps < 1.0)) throw ConfigError("field 'curve.eps' must lie in (0,1)");
  return cc;
}

}  // namespace

std::uint64_t RunConfig::plan_n() const {
  if (n) return *n;
  return static_cast<std::uint64_t>(std::llround(static_cast<double>(session.N) * session.eta));
}

Tamper fault_from_name(const std::string& name) {
  if (name == "basis_sift") return Tamper{FrameType::BasisSift, false, 0};
  if (name == "ev_tag") return Tamper{FrameType::EvTag, true, 0};
  if (name == "pa_seed") return Tamper{FrameType::PaSeed, false, 0};
  throw ConfigError("unknown fault '" + name + "' (expected basis_sift, ev_tag or pa_seed)");
}

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j,
                 {"N", "eta", "e_bx", "e_bz", "p_x", "p_dc", "eps_target", "f_ec", "rng_seed_alice", "rng_seed_bob",
                  "rng_seed_channel", "rng_seed_pool", "pool_init", "double_click_random_basis", "n", "transport",
                  "listen", "connect", "role", "out", "format", "transcript", "plan", "fault", "curve"},
                 "");
  require(j, {"e_bx", "e_bz", "eps_target"}, "");

  RunConfig rc;
  SessionParams& s = rc.session;
  s.e_bx = number(j, "e_bx", "");
  s.e_bz = number(j, "e_bz", "");
  s.eps_target = number(j, "eps_target", "");
  if (j.contains("N")) s.N = count(j, "N", "");
  if (j.contains("eta")) s.eta = number(j, "eta", "");
  if (j.contains("p_x")) {
    s.p_x = number(j, "p_x", "");
    rc.p_x_given = true;
  }
  if (j.contains("p_dc")) s.p_dc = number(j, "p_dc", "");
  if (j.contains("f_ec")) s.f_ec = number(j, "f_ec", "");
  if (j.contains("rng_seed_alice")) s.rng_seed_alice = count(j, "rng_seed_alice", "");
  if (j.contains("rng_seed_bob")) s.rng_seed_bob = count(j, "rng_seed_bob", "");
  if (j.contains("rng_seed_channel")) s.rng_seed_channel = count(j, "rng_seed_channel", "");
  if (j.contains("rng_seed_pool")) s.rng_seed_pool = count(j, "rng_seed_pool", "");
  if (j.contains("pool_init")) s.pool_init = count(j, "pool_init", "");
  if (j.contains("double_click_random_basis")) {
    if (!j.at("double_click_random_basis").is_boolean()) {
      throw ConfigError("field 'double_click_random_basis' must be a boolean");
    }
    s.double_click_random_basis = j.at("double_click_random_basis").get<bool>();
  }
  if (j.contains("n")) {
    rc.n = count(j, "n", "");
    if (*rc.n < 2) throw ConfigError("field 'n' must be at least 2");
  }

  if (!(s.eps_target > 0.0 && s.eps_target < 1.0)) throw ConfigError("field 'eps_target' must lie in (0,1)");
  probability(s.e_bx, "e_bx");
  probability(s.e_bz, "e_bz");
  probability(s.eta, "eta");
  probability(s.p_x, "p_x");
  probability(s.p_dc, "p_dc");
  if (!(s.f_ec >= 1.0) || !std::isfinite(s.f_ec)) throw ConfigError("field 'f_ec' must be at least 1");
  if (s.N < 1) throw ConfigError("field 'N' must be at least 1");

  for (const char* key : {"transport", "listen", "connect", "role", "out", "format", "transcript", "plan"}) {
    if (!j.contains(key)) continue;
    const std::string v = text(j, key, "");
    if (std::string(key) == "transport") rc.transport = v;
    if (std::string(key) == "listen") rc.listen = v;
    if (std::string(key) == "connect") rc.connect = v;
    if (std::string(key) == "role") rc.role = v;
    if (std::string(key) == "out") rc.out = v;
    if (std::string(key) == "format") rc.format = v;
    if (std::string(key) == "transcript") rc.transcript = v;
    if (std::string(key) == "plan") rc.plan = v;
  }
  if (rc.transport != "inmem" && rc.transport != "tcp") throw ConfigError("field 'transport' must be inmem or tcp");
  if (!rc.format.empty() && rc.format != "json" && rc.format != "csv") throw ConfigError("field 'format' must be json or csv");
  if (!rc.role.empty() && rc.role != "alice" && rc.role != "bob") throw ConfigError("field 'role' must be alice or bob");
  if (j.contains("fault")) rc.fault = fault_from_name(text(j, "fault", ""));
  if (j.contains("curve")) rc.curve = parse_curve(j.at("curve"));
  return rc;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace qkdpp::cli
