#include "mrlink/multirelay.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mrlink/error.hpp"
#include "mrlink/stationary.hpp"

namespace mrlink {
namespace {

using RowVector = Eigen::RowVectorXd;
using Vector = Eigen::VectorXd;

constexpr int kFirst = static_cast<int>(StateKind::First);
constexpr int kBoth = static_cast<int>(StateKind::Both);

// The link chain with delivery turned into absorption: `transient` is M with
// the Both -> First block removed, `exit` the per-state delivery probability.
struct AbsorbingLink {
  Matrix transient;
  Vector exit;
  RowVector start;
};

AbsorbingLink absorbing_link(const LinkConfig& config, DelayStart start) {
  const ChainMatrix chain = build_chain(config);
  const int n = chain.positions;

  AbsorbingLink a;
  a.transient = chain.matrix;
  a.transient.block(kBoth * n, kFirst * n, n, n).setZero();
  a.exit = Vector::Zero(chain.size());
  a.exit.segment(kBoth * n, n) = chain.block(kBoth, kFirst).rowwise().sum();

  a.start = RowVector::Zero(chain.size());
  if (start == DelayStart::PacketStart) {
    const std::vector<double> pi = solve_stationary(chain);
    const double first = chain.block_mass(pi, kFirst);
    if (!(first > 0.0)) throw NoDelivery("throughput is zero: the link never delivers");
    for (int i = 0; i < n; ++i) a.start(kFirst * n + i) = pi[kFirst * n + i] / first;
  } else {
    const WalkStationary mu = walk_stationary(config.walk);
    for (int i = 0; i < n; ++i) a.start(kFirst * n + i) = mu.mass[i];
  }
  return a;
}

// Expected slots to delivery from each transient state.
Vector expected_remaining(const AbsorbingLink& a) {
  const Eigen::Index size = a.transient.rows();
  Eigen::FullPivLU<Matrix> lu(Matrix::Identity(size, size) - a.transient);
  if (!lu.isInvertible()) {
    throw NoDelivery("delivery is not reachable from every state");
  }
  return lu.solve(Vector::Ones(size));
}

}  // namespace

double DelayDistribution::pmf(int t) const {
  if (t < 0 || t > horizon) throw InvalidArgument("t outside the distribution horizon");
  return t == 0 ? cdf[0] : cdf[t] - cdf[t - 1];
}

int DelayDistribution::quantile(double probability) const {
  if (!(probability >= 0.0 && probability <= 1.0)) {
    throw InvalidArgument("quantile probability must be in [0,1]");
  }
  const auto it = std::lower_bound(cdf.begin(), cdf.end(), probability);
  if (it == cdf.end()) {
    throw InvalidArgument("horizon " + std::to_string(horizon) +
                          " too small for the requested quantile");
  }
  return static_cast<int>(it - cdf.begin());
}

DelayDistribution delay_distribution(const LinkConfig& config, int horizon, DelayStart start) {
  if (horizon < 2) throw InvalidArgument("delay horizon must be >= 2 slots");
  const AbsorbingLink a = absorbing_link(config, start);
  const Vector remaining = expected_remaining(a);

  DelayDistribution d;
  d.horizon = horizon;
  d.cdf.assign(horizon + 1, 0.0);
  RowVector w = a.start;
  double cumulative = 0.0;
  for (int t = 1; t <= horizon; ++t) {
    const double delivered = w.dot(a.exit);
    cumulative += delivered;
    d.truncated_mean += t * delivered;
    d.cdf[t] = std::min(cumulative, 1.0);
    w = w * a.transient;
  }
  d.tail_mass = std::max(w.sum(), 0.0);
  d.mean_lower = d.truncated_mean + (horizon + 1) * d.tail_mass;
  d.mean_upper = d.truncated_mean + d.tail_mass * (horizon + remaining.maxCoeff());
  return d;
}

double expected_delay(const LinkConfig& config, DelayStart start) {
  const AbsorbingLink a = absorbing_link(config, start);
  return a.start.dot(expected_remaining(a));
}

std::vector<double> min_delay_probability(std::span<const double> cdf, int relays) {
  if (relays < 1) throw InvalidArgument("relay count must be >= 1");
  std::vector<double> out(cdf.size());
  std::transform(cdf.begin(), cdf.end(), out.begin(), [relays](double p) {
    return 1.0 - std::pow(1.0 - p, relays);
  });
  return out;
}

std::vector<double> poisson_min_delay(std::span<const double> cdf, double lambda) {
  if (!(lambda > 0.0)) throw InvalidArgument("Poisson mean must be > 0");
  std::vector<double> out(cdf.size());
  std::transform(cdf.begin(), cdf.end(), out.begin(),
                 [lambda](double p) { return -std::expm1(-lambda * p); });
  return out;
}

}  // namespace mrlink
