#pragma once

#include <stdexcept>
#include <string>

namespace mhdvac {

// Input lies outside the admissible set (non-hyperbolic state, degenerate lift, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller misuse: bad axis, bad shape, malformed config.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation went numerically wrong: blow-up, singular assembly, residual too large.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mhdvac
