#include "mrlink/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mrlink/error.hpp"

namespace mrlink {
namespace {

using Vector = Eigen::VectorXd;

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

// Clears round-off negatives and renormalizes. Returns false when the vector
// is not a probability vector up to round-off.
bool clean_probability(Vector& v) {
  constexpr double kNegativeSlack = 1e-12;
  if (!v.allFinite()) return false;
  if (v.minCoeff() < -kNegativeSlack) return false;
  v = v.cwiseMax(0.0);
  const double total = v.sum();
  if (!(total > 0.0)) return false;
  v /= total;
  return true;
}

}  // namespace

double stationary_residual(const Matrix& transition, const std::vector<double>& pi) {
  const Eigen::Map<const Eigen::RowVectorXd> row(pi.data(), static_cast<Eigen::Index>(pi.size()));
  return (row * transition - row).cwiseAbs().maxCoeff();
}

StationaryResult stationary_by_iteration(const Matrix& transition,
                                         const StationaryOptions& options) {
  const Eigen::Index n = transition.rows();
  const Matrix lazy_t = 0.5 * (transition + Matrix::Identity(n, n)).transpose();
  Vector pi = Vector::Constant(n, 1.0 / static_cast<double>(n));
  Vector next(n);
  for (long it = 1; it <= options.max_iterations; ++it) {
    next.noalias() = lazy_t * pi;
    next /= next.sum();
    const double change = (next - pi).cwiseAbs().maxCoeff();
    pi.swap(next);
    if (change < options.iteration_tolerance) {
      StationaryResult r;
      r.pi = to_std(pi);
      r.residual = stationary_residual(transition, r.pi);
      r.used_fallback = true;
      r.iterations = it;
      return r;
    }
  }
  throw NumericalError("power iteration did not converge in " +
                       std::to_string(options.max_iterations) + " iterations");
}

StationaryResult stationary_distribution(const Matrix& transition,
                                         const StationaryOptions& options) {
  const Eigen::Index n = transition.rows();
  if (n == 0 || transition.cols() != n) {
    throw InvalidArgument("transition matrix must be square and non-empty");
  }

  Matrix system = transition.transpose() - Matrix::Identity(n, n);
  system.row(n - 1).setOnes();
  Vector rhs = Vector::Zero(n);
  rhs(n - 1) = 1.0;

  Eigen::FullPivLU<Matrix> lu(system);
  if (lu.isInvertible()) {
    Vector pi = lu.solve(rhs);
    if (clean_probability(pi)) {
      StationaryResult r;
      r.pi = to_std(pi);
      r.residual = stationary_residual(transition, r.pi);
      if (r.residual < options.residual_tolerance) return r;
    }
  }

  StationaryResult r = stationary_by_iteration(transition, options);
  if (!(r.residual < options.residual_tolerance)) {
    throw NumericalError("stationary solve residual " + std::to_string(r.residual) +
                         " above tolerance");
  }
  return r;
}

}  // namespace mrlink
