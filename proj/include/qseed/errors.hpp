#pragma once

#include <stdexcept>

namespace qseed {

// Objective has no polynomial form, so a Pauli-Z expansion cannot be built.
struct NotExpandableError : std::domain_error {
  using std::domain_error::domain_error;
};

// Analytic gradient requested from an objective that does not define one.
struct NotDifferentiableError : std::domain_error {
  using std::domain_error::domain_error;
};

// Objective produced NaN or Inf inside an optimizer loop.
struct NonFiniteValueError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Problem shape outside what a component supports (register too wide,
// non-separable objective handed to a per-dimension path, ...).
struct UnsupportedProblemError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace qseed
