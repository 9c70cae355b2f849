#include "qkdpp/bounds/entropy.hpp"

#include <cmath>
#include <string>

#include "qkdpp/errors.hpp"

namespace qkdpp {

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("binary_entropy: argument " + std::to_string(x) + " outside [0,1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double xi(double e_b, double q, double theta) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("xi: bias ratio must lie in (0,1)");
  const double ep = e_b + theta;
  if (!(e_b >= 0.0 && e_b <= 1.0) || !(ep >= 0.0 && ep <= 1.0)) {
    throw DomainError("xi: error rates outside [0,1]");
  }
  const double mixed = e_b + theta - q * theta;
  return binary_entropy(mixed) - q * binary_entropy(e_b) - (1.0 - q) * binary_entropy(ep);
}

}  // namespace qkdpp
