#pragma once

#include <span>
#include <vector>

#include "mrlink/chain.hpp"

namespace mrlink {

// Law of eta, the number of slots from a packet's first transmission through
// the slot in which D decodes it. cdf[t] = Pr(eta <= t), t = 0..horizon.
struct DelayDistribution {
  std::vector<double> cdf;
  int horizon = 0;
  double tail_mass = 0.0;  // Pr(eta > horizon)
  // sum_{t <= horizon} t Pr(eta = t)
  double truncated_mean = 0.0;
  // Bracket on E[eta] using the worst-case expected remaining time of any
  // transient state for the tail.
  double mean_lower = 0.0;
  double mean_upper = 0.0;

  double pmf(int t) const;
  // Smallest t with cdf[t] >= probability; throws if the horizon is too short.
  int quantile(double probability) const;
};

enum class DelayStart {
  // Relay position at packet start distributed as pi_F / pi_0 of the
  // stationary chain: the law a typical packet sees in steady state.
  PacketStart,
  // Relay position from the walk's stationary law.
  WalkStationary,
};

DelayDistribution delay_distribution(const LinkConfig& config, int horizon,
                                     DelayStart start = DelayStart::PacketStart);

// E[eta] solved directly from the transient part of the chain.
double expected_delay(const LinkConfig& config, DelayStart start = DelayStart::PacketStart);

// Pr(min(eta_1..eta_m) <= t) = 1 - (1 - p(t))^m for m i.i.d. two-hop links.
std::vector<double> min_delay_probability(std::span<const double> cdf, int relays);

// Same with m ~ Poisson(lambda): 1 - exp(-lambda p(t)).
std::vector<double> poisson_min_delay(std::span<const double> cdf, double lambda);

}  // namespace mrlink
