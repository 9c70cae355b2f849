#include "qkdpp/bounds/hypergeometric.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

#include "qkdpp/logmath.hpp"

namespace qkdpp {
namespace {

constexpr std::uint64_t kExactBelow = 200;

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

cpp_int binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  cpp_int r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

}  // namespace

double log2_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return logmath::kNegInf;
  const double ln = std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
                    std::lgamma(static_cast<double>(n - k) + 1.0);
  return ln / std::log(2.0);
}

double hypergeometric_tail_exact(std::uint64_t N, std::uint64_t n, std::uint64_t k, std::uint64_t m) {
  if (n > N || m > N || k > n || k > m || n - k > N - m) return 0.0;
  if (N < kExactBelow) {
    const cpp_rational p(binomial(m, k) * binomial(N - m, n - k), binomial(N, n));
    return p.convert_to<double>();
  }
  return std::exp2(log2_binomial(m, k) + log2_binomial(N - m, n - k) - log2_binomial(N, n));
}

}  // namespace qkdpp
