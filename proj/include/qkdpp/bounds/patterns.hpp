#pragma once

#include <cstdint>

namespace qkdpp {

/// log2 of the number of phase-error patterns that privacy amplification
/// must cover on n_bits bits with error rate at most e_b + theta.
///
/// Returns n_bits H(e_b + theta) when e_b + theta < 1/3, where it bounds the
/// binomial sum from above; otherwise returns phase_pattern_count_exact_log2.
double phase_pattern_count_log2(std::uint64_t n_bits, double e_b, double theta);

/// log2 of sum_{k=0}^{K} C(n_bits, k) with K = ceil((e_b + theta) n_bits - 1).
/// Exact integers up to 4096 bits, log-domain summation above. -inf if K < 0.
double phase_pattern_count_exact_log2(std::uint64_t n_bits, double e_b, double theta);

}  // namespace qkdpp
