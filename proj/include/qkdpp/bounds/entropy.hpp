#pragma once

namespace qkdpp {

/// H(x) = -x log2 x - (1-x) log2(1-x), with H(0) = H(1) = 0.
/// Throws DomainError outside [0,1].
double binary_entropy(double x);

/// Exponent of the sampling bound:
/// H(e + theta - q theta) - q H(e) - (1-q) H(e + theta).
/// Nonnegative by concavity of H. Requires 0 < q < 1 and e, e + theta in [0,1].
double xi(double e_b, double q, double theta);

}  // namespace qkdpp
