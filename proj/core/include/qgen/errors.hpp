#pragma once

#include <stdexcept>
#include <string>

namespace qgen {

/// Input violates a documented precondition (zero form, bad residue class,
/// dimension mismatch, malformed file, ...).
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested construction cannot exist at the requested scale
/// (no qualifying prime in range, form not rich over the chosen field).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qgen
