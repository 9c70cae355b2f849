#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qkdpp/accounting/accounting.hpp"
#include "qkdpp/optimizer/optimizer.hpp"
#include "qkdpp/protocol/channel.hpp"
#include "qkdpp/protocol/key_pool.hpp"
#include "qkdpp/protocol/party_io.hpp"
#include "qkdpp/protocol/params.hpp"
#include "qkdpp/protocol/quantum_sim.hpp"
#include "qkdpp/protocol/steps.hpp"

namespace qkdpp {

struct PartyOutcome {
  Role role = Role::Alice;
  bool aborted = false;
  std::string abort_step;
  std::string abort_reason;
  bool peer_closed = false;  // abort caused by the other side hanging up

  BitString final_key;
  std::vector<StepReport> reports;
  std::vector<PoolRecord> ledger;
  std::uint64_t pool_initial = 0;
  std::uint64_t pool_remaining = 0;
  std::uint64_t pool_consumed = 0;
  std::uint64_t pool_outstanding = 0;
  std::vector<TranscriptEntry> transcript;

  // realized counts
  std::uint64_t n = 0;
  std::uint64_t n_x = 0;
  std::uint64_t n_z = 0;
  std::uint64_t errors_x = 0;
  std::uint64_t errors_z = 0;
  int ec_attempts = 0;
  std::uint64_t k_ec = 0;
  double f_realized_x = 0.0;
  double f_realized_z = 0.0;
  std::uint64_t theta_x_steps = 0;
  std::uint64_t theta_z_steps = 0;
  double theta_x = 0.0;
  double theta_z = 0.0;
  bool x_keyed = false;
  bool z_keyed = false;
  std::uint64_t m_pa = 0;  // bits entering privacy amplification
  std::uint64_t l = 0;

  // set when the party reached the end
  std::optional<FailureBudget> budget;
  double eps_log2 = 0.0;
  double zeta = 0.0;
  std::int64_t net_key = 0;  // l minus all pool bits consumed
};

/// One party's state machine. Both parties call this with the same records
/// (each uses only its own side), params and plan. The plan supplies the
/// cost allocation and t_oe; the deviations are re-derived from the realized
/// counts and error rates.
PartyOutcome run_party(Role role, Channel& ch, const SessionParams& params, const OptimizedPlan& plan,
                       const QuantumRecords& records);

struct SessionOptions {
  std::optional<Tamper> tamper;  // applied to frames Alice sends
};

struct SessionResult {
  bool aborted = false;
  std::string abort_step;
  std::string abort_reason;
  PartyOutcome alice;
  PartyOutcome bob;

  /// Shared totals, copied from Alice's outcome when neither side aborted.
  std::uint64_t l = 0;
  std::int64_t net_key = 0;
  std::optional<FailureBudget> budget;
  double eps_log2 = 0.0;
  double zeta = 0.0;
};

/// Simulates the quantum phase and runs both parties on two threads over an
/// in-memory link. Throws Infeasible if the plan is not feasible.
SessionResult run_session(const SessionParams& params, const OptimizedPlan& plan, const SessionOptions& opts = {});

/// Pre-shared pool both parties derive from params.rng_seed_pool.
KeyPool make_pool(const SessionParams& params);

}  // namespace qkdpp
