#pragma once

#include <stdexcept>

namespace mrlink {

// Bad parameter values, out-of-range indices, unknown names.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Singular systems, non-convergence.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The chain is valid but delivery never happens (pi_0 = 0).
class NoDelivery : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Malformed configuration documents.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mrlink
