#pragma once

#include <cstdint>

namespace qkdpp {

/// Pr{k | m, n, N}: probability that a uniformly random n-subset of a
/// population of N items, m of them marked, contains exactly k marked items.
///
/// Exact rational arithmetic for N < 200, log-gamma above. Returns 0 for
/// combinatorially impossible arguments.
double hypergeometric_tail_exact(std::uint64_t N, std::uint64_t n, std::uint64_t k, std::uint64_t m);

/// log2 C(n, k) via log-gamma; -inf when k > n.
double log2_binomial(std::uint64_t n, std::uint64_t k);

}  // namespace qkdpp
