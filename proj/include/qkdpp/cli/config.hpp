#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkdpp/protocol/channel.hpp"
#include "qkdpp/protocol/params.hpp"

namespace qkdpp::cli {

/// Bad or missing configuration; maps to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CurveConfig {
  std::string kind;  // rate_vs_n | min_n_vs_eps | key_vs_bias | optbias_vs_n
  std::vector<std::uint64_t> ns;
  std::vector<double> epsilons;
  std::vector<double> q_grid;
  std::uint64_t n = 0;
  double eps = 0.0;
  std::uint64_t n_max = 4000000000ULL;
};

/// A JSON document mirroring SessionParams plus command options. Every key
/// is checked: unknown keys and wrongly typed values are rejected.
///
/// Required: e_bx, e_bz, eps_target. `n` (raw key length for planning)
/// defaults to round(N * eta); `p_x` defaults to the optimizer's choice.
struct RunConfig {
  SessionParams session;
  bool p_x_given = false;
  std::optional<std::uint64_t> n;

  std::string transport = "inmem";  // inmem | tcp
  std::string listen;               // HOST:PORT, Bob in tcp mode
  std::string connect;              // HOST:PORT, Alice in tcp mode
  std::string role;                 // alice | bob
  std::string out;
  std::string format;               // json | csv; empty means the command default
  std::string transcript;           // optional transcript dump path
  std::string plan;                 // optional plan file for simulate
  std::optional<Tamper> fault;      // man-in-the-middle on Alice's frames
  std::optional<CurveConfig> curve;

  /// Planning length: n if given, else round(N * eta).
  [[nodiscard]] std::uint64_t plan_n() const;
};

/// Parses and validates. Throws ConfigError naming the offending field.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

/// "basis_sift" flips a payload bit of BASIS_SIFT, "ev_tag" a tag bit of
/// EV_TAG, "pa_seed" a payload bit of PA_SEED. Throws ConfigError otherwise.
Tamper fault_from_name(const std::string& name);

}  // namespace qkdpp::cli
