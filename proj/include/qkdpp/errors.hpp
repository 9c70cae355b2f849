#pragma once

#include <stdexcept>
#include <string>

namespace qkdpp {

/// Operand lengths that do not fit together (XOR of unequal strings, a
/// message that does not match a hash's column count, ...).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of a formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A hash description that violates its invariants (reducible connection
/// polynomial, zero LFSR state, wrong seed length).
class InvalidSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// No parameter choice yields a usable result.
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qkdpp
