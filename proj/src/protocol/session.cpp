#include "qkdpp/protocol/session.hpp"

#include <cmath>
#include <thread>

#include "qkdpp/bounds/sampling.hpp"
#include "qkdpp/errors.hpp"
#include "qkdpp/logmath.hpp"
#include "qkdpp/optimizer/costs.hpp"

namespace qkdpp {
namespace {

constexpr int kMaxEcAttempts = 2;

struct Deviations {
  std::uint64_t i = 0;
  std::uint64_t j = 0;
  double theta_x = 0.0;
  double theta_z = 0.0;
  double eps_ph_log2 = 0.0;
  KeyLength kl{};
};

// Deviations for the realized counts and error rates under the phase budget.
Deviations phase_estimate(const PartyOutcome& o, const SessionParams& p, const OptimizedPlan& plan) {
  const std::string& s = step::kPhaseEstimation;
  if (o.n_x == 0 || o.n_z == 0) throw ProtocolAbort(s, "a basis has no sifted bits");
  const double ex = static_cast<double>(o.errors_x) / static_cast<double>(o.n_x);
  const double ez = static_cast<double>(o.errors_z) / static_cast<double>(o.n_z);
  if (ex >= 0.5 || ez >= 0.5) throw ProtocolAbort(s, "observed error rate at or above 1/2");
  OptimizedPlan fit;
  try {
    fit = optimize_for_counts(o.n, o.n_x, o.n_z, ex, ez, p.eps_target, p.f_ec);
  } catch (const DomainError& e) {
    throw ProtocolAbort(s, e.what());
  }
  if (fit.nr == -std::numeric_limits<double>::infinity()) {
    throw ProtocolAbort(s, "no deviations meet the phase-error budget");
  }
  Deviations d;
  d.i = fit.theta_x_steps;
  d.j = fit.theta_z_steps;
  d.theta_x = fit.theta_x;
  d.theta_z = fit.theta_z;
  const double sx = substitute_zero_error(ex, o.n_x);
  const double sz = substitute_zero_error(ez, o.n_z);
  d.eps_ph_log2 = logmath::add(phase_sampling_bound_log2(o.n_x, o.n_z, sx, d.theta_x),
                               phase_sampling_bound_log2(o.n_z, o.n_x, sz, d.theta_z));
  d.kl = key_length_objective(o.n_x, o.n_z, sx, sz, d.theta_x, d.theta_z, plan.k3, p.f_ec);
  return d;
}

void snapshot_pool(PartyOutcome& o, const KeyPool& pool) {
  o.ledger = pool.ledger();
  o.pool_initial = pool.initial();
  o.pool_remaining = pool.remaining();
  o.pool_consumed = pool.consumed();
  o.pool_outstanding = pool.outstanding();
}

void run_steps(PartyOutcome& o, PartyIo& io, const SessionParams& p, const OptimizedPlan& plan,
               const QuantumRecords& rec, std::string& current) {
  const CostAllocation& c = plan.costs;
  StepReport rep;

  const SiftedRaw raw = key_sift_step(io, rec, p, rep);
  o.reports.push_back(rep);
  o.n = raw.n;
  if (o.n < 2) throw ProtocolAbort(step::kKeySift, "fewer than two detections");

  current = step::kBasisSift;
  const BasisSiftResult bs = basis_sift(io, raw, c.k_bs, rep);
  o.reports.push_back(rep);
  o.n_x = bs.n_x;
  o.n_z = bs.n_z;

  BitString kx = bs.key_x;
  BitString kz = bs.key_z;
  bool verified = false;
  std::uint64_t ev_cost = 0;
  while (!verified) {
    if (o.ec_attempts == kMaxEcAttempts) {
      o.reports.push_back({step::kErrorVerify, ev_cost,
                           eps_error_verify_log2(o.n_x + o.n_z, c.k_ev) + std::log2(o.ec_attempts), {}});
      throw ProtocolAbort(step::kErrorVerify, "tags differ after " + std::to_string(kMaxEcAttempts) + " attempts");
    }
    ++o.ec_attempts;
    current = step::kErrorCorrect;
    const EcResult ec = error_correct(io, kx, kz, p, o.ec_attempts, rep);
    o.reports.push_back(rep);
    kx = ec.key_x;
    kz = ec.key_z;
    o.errors_x += ec.errors_x;
    o.errors_z += ec.errors_z;
    o.k_ec += ec.total_bits;
    o.f_realized_x = rep.aux["f_realized_x"];
    o.f_realized_z = rep.aux["f_realized_z"];
    BitString whole = kx;
    whole.append(kz);
    current = step::kErrorVerify;
    const std::uint64_t before = io.pool().consumed();
    verified = error_verify(io, whole, c.k_ev);
    ev_cost += io.pool().consumed() - before;
  }
  StepReport ev{step::kErrorVerify, ev_cost,
                eps_error_verify_log2(o.n_x + o.n_z, c.k_ev) + std::log2(o.ec_attempts), {}};
  ev.aux["attempts"] = o.ec_attempts;
  o.reports.push_back(ev);

  current = step::kPhaseEstimation;
  const Deviations d = phase_estimate(o, p, plan);
  o.theta_x_steps = d.i;
  o.theta_z_steps = d.j;
  o.theta_x = d.theta_x;
  o.theta_z = d.theta_z;
  o.x_keyed = d.kl.x_keyed;
  o.z_keyed = d.kl.z_keyed;
  if (!o.x_keyed && !o.z_keyed) throw ProtocolAbort(step::kPhaseEstimation, "neither basis yields key");
  o.l = final_key_length(d.kl, c.t_oe);
  StepReport ph{step::kPhaseEstimation, 0, d.eps_ph_log2, {}};
  ph.aux["theta_x"] = d.theta_x;
  ph.aux["theta_z"] = d.theta_z;
  ph.aux["e_x"] = static_cast<double>(o.errors_x) / static_cast<double>(o.n_x);
  ph.aux["e_z"] = static_cast<double>(o.errors_z) / static_cast<double>(o.n_z);
  ph.aux["l"] = static_cast<double>(o.l);
  o.reports.push_back(ph);

  BitString pa_in;
  if (o.x_keyed) pa_in.append(kx);
  if (o.z_keyed) pa_in.append(kz);
  o.m_pa = pa_in.size();
  std::seed_seq seq{static_cast<std::uint32_t>(p.rng_seed_alice), static_cast<std::uint32_t>(p.rng_seed_alice >> 32),
                    0x7061U};
  std::mt19937_64 g(seq);
  current = step::kPrivacyAmplify;
  const std::uint64_t before = io.pool().consumed();
  o.final_key = privacy_amplify(io, pa_in, static_cast<std::size_t>(o.l), c.k_pa, g);
  StepReport pa{step::kPrivacyAmplify, io.pool().consumed() - before,
                eps_privacy_amp_log2(o.m_pa, o.l, c.k_pa, c.t_oe), {}};
  pa.aux["m"] = static_cast<double>(o.m_pa);
  pa.aux["l"] = static_cast<double>(o.l);
  o.reports.push_back(pa);

  FailureBudget b{eps_basis_sift_log2(o.n, c.k_bs), ev.eps_log2, ph.eps_log2, pa.eps_log2};
  o.budget = b;
  o.eps_log2 = b.total_log2();
  o.zeta = b.zeta();
  o.net_key = static_cast<std::int64_t>(o.l) - static_cast<std::int64_t>(io.pool().consumed());
}

}  // namespace

KeyPool make_pool(const SessionParams& params) {
  std::mt19937_64 g(params.rng_seed_pool);
  return KeyPool(BitString::random(static_cast<std::size_t>(params.pool_init), g));
}

PartyOutcome run_party(Role role, Channel& ch, const SessionParams& params, const OptimizedPlan& plan,
                       const QuantumRecords& records) {
  PartyOutcome o;
  o.role = role;
  KeyPool pool = make_pool(params);
  PartyIo io(role, ch, pool);
  std::string current = step::kKeySift;
  try {
    run_steps(o, io, params, plan, records, current);
  } catch (const ProtocolAbort& e) {
    o.aborted = true;
    o.abort_step = e.step;
    o.abort_reason = e.what();
    o.peer_closed = o.abort_reason.rfind("peer closed", 0) == 0;
  } catch (const PoolExhausted& e) {
    o.aborted = true;
    o.abort_step = current;
    o.abort_reason = e.what();
  }
  ch.close();
  if (o.aborted) {
    o.final_key = BitString();
    o.budget.reset();
  }
  snapshot_pool(o, pool);
  o.transcript = io.transcript();
  return o;
}

SessionResult run_session(const SessionParams& params, const OptimizedPlan& plan, const SessionOptions& opts) {
  params.validate();
  if (!plan.feasible) throw Infeasible("plan is not feasible");
  const QuantumRecords rec = simulate_quantum_phase(params);
  InMemoryLink link;
  std::optional<TamperingChannel> mitm;
  if (opts.tamper) mitm.emplace(link.alice(), *opts.tamper);
  Channel& alice_ch = mitm ? static_cast<Channel&>(*mitm) : link.alice();

  SessionResult r;
  std::thread bob([&] { r.bob = run_party(Role::Bob, link.bob(), params, plan, rec); });
  r.alice = run_party(Role::Alice, alice_ch, params, plan, rec);
  bob.join();

  if (r.alice.aborted || r.bob.aborted) {
    r.aborted = true;
    // report the side that detected the problem rather than the one that was hung up on
    const PartyOutcome& first = (r.alice.aborted && !r.alice.peer_closed) || !r.bob.aborted ? r.alice : r.bob;
    r.abort_step = first.abort_step;
    r.abort_reason = to_string(first.role) + ": " + first.abort_reason;
    r.alice.final_key = BitString();
    r.bob.final_key = BitString();
    return r;
  }
  r.l = r.alice.l;
  r.net_key = r.alice.net_key;
  r.budget = r.alice.budget;
  r.eps_log2 = r.alice.eps_log2;
  r.zeta = r.alice.zeta;
  return r;
}

}  // namespace qkdpp
