#include "mrlink/chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mrlink/error.hpp"
#include "mrlink/stationary.hpp"

namespace mrlink {
namespace {

constexpr int kFirst = static_cast<int>(StateKind::First);
constexpr int kRetransmit = static_cast<int>(StateKind::Retransmit);
constexpr int kBoth = static_cast<int>(StateKind::Both);

void check_energy(double energy, double energy_max, const char* what) {
  if (!(energy > 0.0)) throw InvalidArgument(std::string(what) + " must be > 0");
  if (energy > energy_max) {
    throw InvalidArgument(std::string(what) + " exceeds energy_max");
  }
}

}  // namespace

LinkConfig default_link(double energy, int steps) {
  LinkConfig c;
  c.geometry = Geometry1D{300.0, 10};
  c.walk = build_walk(c.geometry, 0.98, steps);
  c.mcs_source = McsParams::from_db(67.7328, 0.9819, 6.3281, 1, 1080);
  c.mcs_relay = c.mcs_source;
  c.energy_source = energy;
  c.energy_relay = energy;
  return c;
}

void validate(const LinkConfig& config) {
  validate(config.geometry);
  validate(config.mcs_source);
  validate(config.mcs_relay);
  validate(config.channel);
  if (config.walk.size() != position_count(config.geometry)) {
    throw InvalidArgument("walk kernel dimension does not match geometry");
  }
  if (config.walk.steps < 0) throw InvalidArgument("walk steps per slot must be >= 0");
  check_energy(config.energy_source, config.channel.energy_max, "energy_source");
  check_energy(config.energy_relay, config.channel.energy_max, "energy_relay");
}

namespace {

// A relay sharing a grid cell with a node is at distance 0; use the r -> 0
// limit of the fading model, which is error free.
double hop_per(const PerModel& model, double energy, const McsParams& mcs,
               const ChannelParams& channel, double distance) {
  if (distance == 0.0 && model.kind == PerModelKind::RayleighUncoded) return 0.0;
  return per_general(model, energy, mcs, channel, distance);
}

}  // namespace

HopErrorRates hop_error_rates(const LinkConfig& config, double energy_source,
                              double energy_relay) {
  check_energy(energy_source, config.channel.energy_max, "source energy");
  check_energy(energy_relay, config.channel.energy_max, "relay energy");
  const int n = position_count(config.geometry);
  HopErrorRates rates;
  rates.source.resize(n);
  rates.relay.resize(n);
  for (int i = 1; i <= n; ++i) {
    const HopDistances d = hop_distances(config.geometry, i);
    rates.source[i - 1] = hop_per(config.per_source, energy_source, config.mcs_source,
                                  config.channel, d.source);
    rates.relay[i - 1] =
        hop_per(config.per_relay, energy_relay, config.mcs_relay, config.channel, d.relay);
  }
  return rates;
}

ChainMatrix::ChainMatrix(int block_count, int position_count_)
    : matrix(Matrix::Zero(block_count * position_count_, block_count * position_count_)),
      blocks(block_count),
      positions(position_count_) {}

int ChainMatrix::index(int block, int position) const {
  if (block < 0 || block >= blocks || position < 1 || position > positions) {
    throw InvalidArgument("state (" + std::to_string(block) + ", " + std::to_string(position) +
                          ") out of range");
  }
  return block * positions + (position - 1);
}

double ChainMatrix::block_mass(std::span<const double> pi, int block) const {
  if (static_cast<int>(pi.size()) != size()) throw InvalidArgument("pi has wrong length");
  double sum = 0.0;
  for (int i = 0; i < positions; ++i) sum += pi[block * positions + i];
  return sum;
}

Matrix ChainMatrix::block(int from, int to) const {
  return matrix.block(from * positions, to * positions, positions, positions);
}

ChainMatrix build_chain(const Matrix& walk_power, std::span<const double> per_source,
                        std::span<const double> per_relay) {
  const int n = static_cast<int>(walk_power.rows());
  if (walk_power.cols() != n || static_cast<int>(per_source.size()) != n ||
      static_cast<int>(per_relay.size()) != n) {
    throw InvalidArgument("dimension mismatch between walk kernel and PER vectors");
  }

  ChainMatrix chain(3, n);
  Matrix& m = chain.matrix;
  for (int i = 0; i < n; ++i) {
    const double fail_s = per_source[i];
    const double fail_r = per_relay[i];
    for (int j = 0; j < n; ++j) {
      const double move = walk_power(i, j);
      m(kFirst * n + i, kRetransmit * n + j) = fail_s * move;
      m(kFirst * n + i, kBoth * n + j) = (1.0 - fail_s) * move;
      m(kRetransmit * n + i, kRetransmit * n + j) = fail_s * move;
      m(kRetransmit * n + i, kBoth * n + j) = (1.0 - fail_s) * move;
      m(kBoth * n + i, kBoth * n + j) = fail_r * move;
      m(kBoth * n + i, kFirst * n + j) = (1.0 - fail_r) * move;
    }
  }
  return chain;
}

ChainMatrix build_chain(const LinkConfig& config) {
  validate(config);
  const HopErrorRates rates = hop_error_rates(config, config.energy_source, config.energy_relay);
  return build_chain(step_kernel(config.walk), rates.source, rates.relay);
}

std::vector<double> solve_stationary(const ChainMatrix& chain) {
  return stationary_distribution(chain.matrix).pi;
}

SteadyMetrics metrics(const LinkConfig& config, std::span<const double> pi) {
  const int n = config.positions();
  if (static_cast<int>(pi.size()) != 3 * n) throw InvalidArgument("pi has wrong length");
  double first = 0.0;
  double both = 0.0;
  for (int i = 0; i < n; ++i) {
    first += pi[kFirst * n + i];
    both += pi[kBoth * n + i];
  }
  if (!(first > 0.0)) throw NoDelivery("throughput is zero: the link never delivers");

  SteadyMetrics out;
  out.pi.assign(pi.begin(), pi.end());
  out.throughput = first;
  out.delay = 1.0 / first;
  out.energy_total = config.energy_source * config.mcs_source.packet_length / first;
  out.energy_relay = config.energy_relay * config.mcs_relay.packet_length * both / first;
  return out;
}

SteadyMetrics steady_metrics(const LinkConfig& config) {
  validate(config);
  const HopErrorRates rates = hop_error_rates(config, config.energy_source, config.energy_relay);
  // Rounding in the solve would otherwise leave ~1e-17 on the First block.
  const auto decodes = [](const std::vector<double>& per) {
    return std::any_of(per.begin(), per.end(), [](double p) { return p < 1.0; });
  };
  if (!decodes(rates.source) || !decodes(rates.relay)) {
    throw NoDelivery("throughput is zero: a hop never decodes");
  }
  const ChainMatrix chain = build_chain(step_kernel(config.walk), rates.source, rates.relay);
  return metrics(config, solve_stationary(chain));
}

SteadyMetrics stationary_relay_metrics(const LinkConfig& config, int position) {
  validate(config);
  const int n = config.positions();
  if (position < 1 || position > n) {
    throw InvalidArgument("position " + std::to_string(position) + " out of range");
  }
  const HopDistances d = hop_distances(config.geometry, position);
  const double per_s[] = {
      hop_per(config.per_source, config.energy_source, config.mcs_source, config.channel,
              d.source)};
  const double per_r[] = {
      hop_per(config.per_relay, config.energy_relay, config.mcs_relay, config.channel, d.relay)};
  const ChainMatrix chain = build_chain(Matrix::Identity(1, 1), per_s, per_r);

  LinkConfig frozen = config;
  frozen.geometry = Geometry1D{1.0, 1};
  frozen.walk = build_walk_1d(std::get<Geometry1D>(frozen.geometry), 0.0, 0);
  return metrics(frozen, solve_stationary(chain));
}

SteadyMetrics random_stationary_metrics(const LinkConfig& config) {
  validate(config);
  const int n = config.positions();
  const WalkStationary mu = walk_stationary(config.walk);

  SteadyMetrics out;
  out.pi.assign(3 * n, 0.0);
  double delay = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double w = mu.mass[i - 1];
    if (w == 0.0) continue;
    SteadyMetrics at;
    try {
      at = stationary_relay_metrics(config, i);
    } catch (const NoDelivery&) {
      // A reachable position that never delivers makes the expectation infinite.
      const double inf = std::numeric_limits<double>::infinity();
      out.delay = inf;
      out.throughput = 0.0;
      out.energy_total = inf;
      out.energy_relay = inf;
      return out;
    }
    delay += w * at.delay;
    out.energy_total += w * at.energy_total;
    out.energy_relay += w * at.energy_relay;
    for (int k = 0; k < 3; ++k) out.pi[k * n + (i - 1)] = w * at.pi[k];
  }
  out.delay = delay;
  out.throughput = 1.0 / delay;
  return out;
}

int best_stationary_position(const LinkConfig& config) {
  int best = 0;
  double best_energy = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= config.positions(); ++i) {
    double e = std::numeric_limits<double>::infinity();
    try {
      e = stationary_relay_metrics(config, i).energy_total;
    } catch (const NoDelivery&) {
      continue;  // this position never delivers
    }
    if (e < best_energy) {
      best_energy = e;
      best = i;
    }
  }
  if (best == 0) throw NoDelivery("no relay position delivers packets");
  return best;
}

}  // namespace mrlink
