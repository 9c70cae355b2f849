#include "qkdpp/cli/json_io.hpp"

#include <sstream>

#include "qkdpp/cli/config.hpp"
#include "qkdpp/logmath.hpp"

namespace qkdpp::cli {
namespace {

using nlohmann::json;

void prob(json& j, const std::string& key, double log2_value) {
  j[key] = logmath::to_linear(log2_value);
  j[key + "_log2"] = log2_value;
}

json costs_to_json(const CostAllocation& c) {
  return {{"t_oe", c.t_oe}, {"k_bs", c.k_bs}, {"k_ev", c.k_ev}, {"k_pa", c.k_pa}, {"total", c.total()}};
}

json report_to_json(const StepReport& r) {
  json j{{"key_cost", r.key_cost}};
  prob(j, "epsilon", r.eps_log2);
  json aux = json::object();
  for (const auto& [k, v] : r.aux) aux[k] = v;
  j["aux"] = aux;
  return j;
}

}  // namespace

std::string to_hex(const BitString& bits) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (std::uint8_t b : bits.to_bytes()) {
    s += digits[b >> 4];
    s += digits[b & 15];
  }
  return s;
}

json plan_to_json(const OptimizedPlan& p) {
  json j{{"feasible", p.feasible},
         {"n", p.n},
         {"e_bx", p.e_bx},
         {"e_bz", p.e_bz},
         {"eps_target", p.eps_target},
         {"f", p.f},
         {"p_x", p.p_x},
         {"q_x", p.q_x},
         {"n_x", p.n_x},
         {"n_z", p.n_z},
         {"theta_x_steps", p.theta_x_steps},
         {"theta_z_steps", p.theta_z_steps},
         {"theta_x", p.theta_x},
         {"theta_z", p.theta_z},
         {"x_keyed", p.x_keyed},
         {"z_keyed", p.z_keyed},
         {"k3", p.k3},
         {"costs", costs_to_json(p.costs)},
         {"a_log2", p.a_log2},
         {"l", p.l},
         {"k_ec_predicted", p.k_ec_predicted},
         {"nr", p.nr},
         {"net_key", p.net_key},
         {"zeta", p.zeta},
         {"asymptotic_key", p.asymptotic}};
  prob(j, "epsilon_ph", p.eps_ph_log2);
  prob(j, "epsilon_bs", p.eps_bs_log2);
  prob(j, "epsilon_ev", p.eps_ev_log2);
  prob(j, "epsilon_pa", p.eps_pa_log2);
  prob(j, "epsilon_3", p.eps3_log2);
  prob(j, "epsilon_3_formula", p.eps3_formula_log2);
  prob(j, "epsilon_final", p.eps_final_log2);
  return j;
}

OptimizedPlan plan_from_json(const json& j) {
  try {
    OptimizedPlan p;
    p.feasible = j.at("feasible").get<bool>();
    p.n = j.at("n").get<std::uint64_t>();
    p.e_bx = j.at("e_bx").get<double>();
    p.e_bz = j.at("e_bz").get<double>();
    p.eps_target = j.at("eps_target").get<double>();
    p.f = j.at("f").get<double>();
    p.p_x = j.at("p_x").get<double>();
    p.q_x = j.at("q_x").get<double>();
    p.n_x = j.at("n_x").get<std::uint64_t>();
    p.n_z = j.at("n_z").get<std::uint64_t>();
    p.theta_x_steps = j.at("theta_x_steps").get<std::uint64_t>();
    p.theta_z_steps = j.at("theta_z_steps").get<std::uint64_t>();
    p.theta_x = j.at("theta_x").get<double>();
    p.theta_z = j.at("theta_z").get<double>();
    p.x_keyed = j.at("x_keyed").get<bool>();
    p.z_keyed = j.at("z_keyed").get<bool>();
    p.k3 = j.at("k3").get<std::int64_t>();
    const json& c = j.at("costs");
    p.costs = CostAllocation{c.at("t_oe").get<std::int64_t>(), c.at("k_bs").get<std::int64_t>(),
                             c.at("k_ev").get<std::int64_t>(), c.at("k_pa").get<std::int64_t>()};
    p.a_log2 = j.at("a_log2").get<double>();
    p.l = j.at("l").get<std::uint64_t>();
    p.k_ec_predicted = j.at("k_ec_predicted").get<std::int64_t>();
    p.nr = j.at("nr").get<double>();
    p.net_key = j.at("net_key").get<std::int64_t>();
    p.zeta = j.at("zeta").get<double>();
    p.asymptotic = j.at("asymptotic_key").get<double>();
    p.eps_ph_log2 = j.at("epsilon_ph_log2").get<double>();
    p.eps_bs_log2 = j.at("epsilon_bs_log2").get<double>();
    p.eps_ev_log2 = j.at("epsilon_ev_log2").get<double>();
    p.eps_pa_log2 = j.at("epsilon_pa_log2").get<double>();
    p.eps3_log2 = j.at("epsilon_3_log2").get<double>();
    p.eps3_formula_log2 = j.at("epsilon_3_formula_log2").get<double>();
    p.eps_final_log2 = j.at("epsilon_final_log2").get<double>();
    return p;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("plan file: ") + e.what());
  }
}

json party_to_json(const PartyOutcome& o) {
  json j{{"role", to_string(o.role)},
         {"aborted", o.aborted},
         {"n", o.n},
         {"n_x", o.n_x},
         {"n_z", o.n_z},
         {"errors_x", o.errors_x},
         {"errors_z", o.errors_z},
         {"ec_attempts", o.ec_attempts},
         {"k_ec", o.k_ec},
         {"f_realized_x", o.f_realized_x},
         {"f_realized_z", o.f_realized_z},
         {"theta_x_steps", o.theta_x_steps},
         {"theta_z_steps", o.theta_z_steps},
         {"theta_x", o.theta_x},
         {"theta_z", o.theta_z},
         {"x_keyed", o.x_keyed},
         {"z_keyed", o.z_keyed},
         {"m_pa", o.m_pa},
         {"l", o.l},
         {"final_key_bits", o.final_key.size()},
         {"final_key_hex", to_hex(o.final_key)}};
  if (o.aborted) {
    j["abort_step"] = o.abort_step;
    j["abort_reason"] = o.abort_reason;
  }
  json per_step = json::object();
  json key_cost = json::object();
  for (const auto& r : o.reports) {
    per_step[r.step] = report_to_json(r);
    key_cost[r.step] = r.key_cost;
  }
  j["per_step"] = per_step;
  j["key_cost"] = key_cost;
  json ledger = json::array();
  for (const auto& r : o.ledger) ledger.push_back({{"step", r.step}, {"move", to_string(r.move)}, {"bits", r.bits}});
  j["pool"] = {{"initial", o.pool_initial},
               {"remaining", o.pool_remaining},
               {"consumed", o.pool_consumed},
               {"outstanding", o.pool_outstanding},
               {"ledger", ledger}};
  if (o.budget) {
    prob(j, "epsilon_total", o.eps_log2);
    prob(j, "epsilon_3", o.budget->eps3_log2());
    j["zeta"] = o.zeta;
    j["net_key"] = o.net_key;
  }
  return j;
}

json session_to_json(const SessionResult& r, const OptimizedPlan& plan) {
  json j{{"aborted", r.aborted}, {"plan", plan_to_json(plan)}};
  if (r.aborted) {
    j["abort_step"] = r.abort_step;
    j["abort_reason"] = r.abort_reason;
  } else {
    j["l"] = r.l;
    j["net_key"] = r.net_key;
    prob(j, "epsilon_total", r.eps_log2);
    j["zeta"] = r.zeta;
    j["keys_equal"] = r.alice.final_key == r.bob.final_key;
    j["final_key_hex"] = to_hex(r.alice.final_key);
  }
  j["alice"] = party_to_json(r.alice);
  j["bob"] = party_to_json(r.bob);
  // top-level copies of the shared per-step view
  j["per_step"] = j["alice"]["per_step"];
  j["key_cost"] = j["alice"]["key_cost"];
  return j;
}

json curve_to_json(const CurveTable& t) {
  json rows = json::array();
  for (const auto& row : t.rows) rows.push_back(row);
  return {{"columns", t.columns}, {"rows", rows}};
}

std::string transcript_dump(const std::vector<TranscriptEntry>& t) {
  std::ostringstream out;
  for (const auto& e : t) {
    const MessageFrame f = decode_frame(e.bytes);
    out << (e.outgoing ? "> " : "< ") << to_string(f.type) << ' ' << f.payload.size() << ' ' << f.tag.size() << ' '
        << to_hex(f.payload) << ' ' << to_hex(f.tag) << '\n';
  }
  return out.str();
}

}  // namespace qkdpp::cli
