#include "qkdpp/protocol/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "qkdpp/bounds/entropy.hpp"

namespace qkdpp {
namespace {

struct Pass {
  std::size_t block = 1;
  std::vector<std::size_t> perm;
  std::vector<std::size_t> inv;
  std::vector<char> odd;

  [[nodiscard]] std::size_t blocks() const { return odd.size(); }
  [[nodiscard]] std::size_t begin(std::size_t b) const { return b * block; }
  [[nodiscard]] std::size_t end(std::size_t b) const { return std::min(perm.size(), (b + 1) * block); }
  [[nodiscard]] std::size_t block_of(std::size_t pos) const { return inv[pos] / block; }
};

struct Range {
  std::size_t pass;
  std::size_t lo;
  std::size_t hi;
};

class Run {
 public:
  Run(PartyIo& io, const BitString& key, const CascadeConfig& cfg)
      : io_(io), cfg_(cfg), key_(key), limit_(cascade_parity_limit(cfg.e_est, cfg.f_target, key.size())) {}

  CascadeOutcome go() {
    CascadeOutcome out;
    const std::size_t n = key_.size();
    if (n == 0) {
      out.key = key_;
      return out;
    }
    std::size_t block = cascade_first_block(cfg_.e_est, n);
    for (int p = 0; p < cfg_.passes; ++p) {
      if (p > 0) {
        // a second single-block pass would only repeat the previous parity
        if (block >= n) break;
        block = std::min(n, block * 2);
      }
      add_pass(static_cast<std::size_t>(p), block);
      Pass& cur = passes_.back();
      std::vector<Range> top;
      top.reserve(cur.blocks());
      for (std::size_t b = 0; b < cur.blocks(); ++b) top.push_back({passes_.size() - 1, cur.begin(b), cur.end(b)});
      const std::vector<char> mism = exchange(top);
      cur.odd = mism;
      ++out.passes_run;
      resolve();
    }
    std::sort(errors_.begin(), errors_.end());
    out.key = key_;
    out.error_positions = errors_;
    out.alice_bits = alice_bits_;
    out.bob_bits = bob_bits_;
    return out;
  }

 private:
  void add_pass(std::size_t index, std::size_t block) {
    const std::size_t n = key_.size();
    Pass p;
    p.block = block;
    p.perm.resize(n);
    std::iota(p.perm.begin(), p.perm.end(), std::size_t{0});
    if (index > 0) {
      std::seed_seq seq{static_cast<std::uint32_t>(cfg_.perm_seed), static_cast<std::uint32_t>(cfg_.perm_seed >> 32),
                        static_cast<std::uint32_t>(index)};
      std::mt19937_64 g(seq);
      for (std::size_t i = n - 1; i > 0; --i) std::swap(p.perm[i], p.perm[g() % (i + 1)]);
    }
    p.inv.resize(n);
    for (std::size_t i = 0; i < n; ++i) p.inv[p.perm[i]] = i;
    p.odd.assign((n + block - 1) / block, 0);
    passes_.push_back(std::move(p));
  }

  [[nodiscard]] bool parity(const Range& r) const {
    const Pass& p = passes_[r.pass];
    bool acc = false;
    for (std::size_t i = r.lo; i < r.hi; ++i) acc ^= key_[p.perm[i]];
    return acc;
  }

  // One padded round trip: Alice's parities out, Bob's mismatch bits back.
  std::vector<char> exchange(const std::vector<Range>& ranges) {
    const std::size_t c = ranges.size();
    if (alice_bits_ + c > limit_) {
      throw ProtocolAbort(cfg_.step, "parity budget exceeded (" + std::to_string(alice_bits_ + c) + " > " +
                                         std::to_string(limit_) + ")");
    }
    BitString own(c);
    for (std::size_t i = 0; i < c; ++i) own.set(i, parity(ranges[i]));
    KeyPool& pool = io_.pool();
    BitString mism;
    if (io_.is_alice()) {
      io_.send({FrameType::EcParity, own ^ pool.consume(c, cfg_.step), {}});
      const MessageFrame reply = io_.expect(FrameType::EcParity, cfg_.step);
      if (reply.payload.size() != c) throw ProtocolAbort(cfg_.step, "parity reply has the wrong length");
      mism = reply.payload ^ pool.consume(c, cfg_.step);
    } else {
      const MessageFrame msg = io_.expect(FrameType::EcParity, cfg_.step);
      if (msg.payload.size() != c) throw ProtocolAbort(cfg_.step, "parity message has the wrong length");
      mism = msg.payload ^ pool.consume(c, cfg_.step) ^ own;
      io_.send({FrameType::EcParity, mism ^ pool.consume(c, cfg_.step), {}});
    }
    alice_bits_ += c;
    bob_bits_ += c;
    std::vector<char> out(c);
    for (std::size_t i = 0; i < c; ++i) out[i] = mism[i] ? 1 : 0;
    return out;
  }

  // Bisects odd blocks, one pass at a time, until every block of every pass
  // so far has even disagreement parity.
  void resolve() {
    for (;;) {
      std::size_t q = passes_.size();
      for (std::size_t i = 0; i < passes_.size() && q == passes_.size(); ++i) {
        if (std::find(passes_[i].odd.begin(), passes_[i].odd.end(), 1) != passes_[i].odd.end()) q = i;
      }
      if (q == passes_.size()) return;
      const Pass& p = passes_[q];
      std::vector<Range> live;
      for (std::size_t b = 0; b < p.blocks(); ++b) {
        if (p.odd[b]) live.push_back({q, p.begin(b), p.end(b)});
      }
      for (;;) {
        std::vector<std::size_t> idx;
        std::vector<Range> ask;
        for (std::size_t i = 0; i < live.size(); ++i) {
          if (live[i].hi - live[i].lo > 1) {
            idx.push_back(i);
            ask.push_back({q, live[i].lo, live[i].lo + (live[i].hi - live[i].lo) / 2});
          }
        }
        if (ask.empty()) break;
        const std::vector<char> mism = exchange(ask);
        for (std::size_t k = 0; k < idx.size(); ++k) {
          Range& r = live[idx[k]];
          if (mism[k]) {
            r.hi = ask[k].hi;
          } else {
            r.lo = ask[k].hi;
          }
        }
      }
      for (const Range& r : live) fix(passes_[q].perm[r.lo]);
    }
  }

  void fix(std::size_t pos) {
    if (!io_.is_alice()) key_.flip(pos);
    errors_.push_back(pos);
    for (Pass& p : passes_) p.odd[p.block_of(pos)] ^= 1;
  }

  PartyIo& io_;
  const CascadeConfig& cfg_;
  BitString key_;
  std::size_t limit_;
  std::vector<Pass> passes_;
  std::vector<std::size_t> errors_;
  std::size_t alice_bits_ = 0;
  std::size_t bob_bits_ = 0;
};

}  // namespace

std::size_t cascade_first_block(double e_est, std::size_t n) {
  if (n == 0) return 1;
  if (!(e_est > 0.0)) return n;
  const double k = std::round(0.73 / e_est);
  return std::clamp<std::size_t>(static_cast<std::size_t>(std::max(1.0, std::min(k, static_cast<double>(n)))), 1, n);
}

std::size_t cascade_parity_limit(double e_est, double f, std::size_t n) {
  const double e = std::clamp(e_est, 0.0, 0.5);
  const double predicted = std::ceil(f * static_cast<double>(n) * binary_entropy(e));
  return 3 * static_cast<std::size_t>(std::max(1.0, predicted));
}

CascadeOutcome cascade(PartyIo& io, const BitString& key, const CascadeConfig& cfg) { return Run(io, key, cfg).go(); }

}  // namespace qkdpp
