#include "qkdpp/bounds/patterns.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <vector>

#include "qkdpp/bounds/entropy.hpp"
#include "qkdpp/bounds/hypergeometric.hpp"
#include "qkdpp/errors.hpp"
#include "qkdpp/logmath.hpp"

namespace qkdpp {
namespace {

constexpr std::uint64_t kExactUpTo = 4096;

// ceil(x - 1), snapping x to an integer when it is within rounding noise.
long long upper_index(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) < 1e-9 * std::max(1.0, std::abs(x))) return static_cast<long long>(r) - 1;
  return static_cast<long long>(std::ceil(x - 1.0));
}

double log2_cpp_int(const boost::multiprecision::cpp_int& v) {
  if (v == 0) return logmath::kNegInf;
  const boost::multiprecision::cpp_bin_float_50 f(v);
  return static_cast<double>(boost::multiprecision::log2(f));
}

}  // namespace

double phase_pattern_count_exact_log2(std::uint64_t n_bits, double e_b, double theta) {
  const double rate = e_b + theta;
  if (!(rate >= 0.0 && rate <= 1.0)) throw DomainError("phase_pattern_count: e_b + theta outside [0,1]");
  long long K = upper_index(rate * static_cast<double>(n_bits));
  if (K < 0) return logmath::kNegInf;
  K = std::min<long long>(K, static_cast<long long>(n_bits));
  const auto top = static_cast<std::uint64_t>(K);

  if (n_bits <= kExactUpTo) {
    boost::multiprecision::cpp_int c = 1;
    boost::multiprecision::cpp_int sum = 0;
    for (std::uint64_t k = 0; k <= top; ++k) {
      sum += c;
      c = c * (n_bits - k) / (k + 1);
    }
    return log2_cpp_int(sum);
  }
  std::vector<double> terms;
  terms.reserve(top + 1);
  for (std::uint64_t k = 0; k <= top; ++k) terms.push_back(log2_binomial(n_bits, k));
  return logmath::sum(terms);
}

double phase_pattern_count_log2(std::uint64_t n_bits, double e_b, double theta) {
  const double rate = e_b + theta;
  if (!(rate >= 0.0 && rate <= 1.0)) throw DomainError("phase_pattern_count: e_b + theta outside [0,1]");
  if (rate < 1.0 / 3.0) return static_cast<double>(n_bits) * binary_entropy(rate);
  return phase_pattern_count_exact_log2(n_bits, e_b, theta);
}

}  // namespace qkdpp
