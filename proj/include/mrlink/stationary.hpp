#pragma once

#include <vector>

#include "mrlink/mobility.hpp"

namespace mrlink {

struct StationaryOptions {
  double residual_tolerance = 1e-10;
  // Fallback power iteration.
  double iteration_tolerance = 1e-12;
  long max_iterations = 1'000'000;
};

struct StationaryResult {
  std::vector<double> pi;
  double residual = 0.0;  // max |pi M - pi|
  bool used_fallback = false;
  long iterations = 0;
};

// Stationary law of a row-stochastic matrix. Solves the transposed balance
// equations with the last one replaced by sum(pi) = 1; if that system is
// singular or the answer is not a probability vector, falls back to power
// iteration on the lazy chain (M + I)/2, which has the same stationary law
// and is aperiodic. Throws NumericalError when neither route converges.
StationaryResult stationary_distribution(const Matrix& transition,
                                         const StationaryOptions& options = {});

// Only the power-iteration route; exposed for tests.
StationaryResult stationary_by_iteration(const Matrix& transition,
                                         const StationaryOptions& options = {});

double stationary_residual(const Matrix& transition, const std::vector<double>& pi);

}  // namespace mrlink
