#pragma once

#include <span>
#include <vector>

#include "mrlink/chain.hpp"

namespace mrlink {

enum class EnergyLevel : int { Low = 0, High = 1 };

// Each new packet picks E_high with probability q, E_low otherwise, and keeps
// that level through all its retransmissions. The relay forwards at the same
// level. link.energy_source / energy_relay are ignored.
struct TimeShareConfig {
  LinkConfig link;
  double energy_low = 1.0e-7;
  double energy_high = 1.8e-5;
  double q = 0.5;
};

void validate(const TimeShareConfig& config);

// Block of (level, kind) in the time-share chain: level * 3 + kind.
constexpr int timeshare_block(EnergyLevel level, StateKind kind) {
  return static_cast<int>(level) * 3 + static_cast<int>(kind);
}

// 6N states. Levels only mix through delivery (Both -> First), where the next
// packet's level is drawn.
ChainMatrix build_timeshare_chain(const TimeShareConfig& config);

struct TimeShareMetrics {
  std::vector<double> pi;
  double q = 0.0;
  double throughput = 0.0;  // pi*_0
  double delay = 0.0;       // 1 / pi*_0
  double energy_total = 0.0;
  double energy_relay = 0.0;
  double low_first = 0.0;   // pi*_{low,0}
  double low_total = 0.0;   // pi*_low
  double high_first = 0.0;  // pi*_{high,0}
  double high_total = 0.0;  // pi*_high
  // Mean delay of a packet at each level. NaN when the level is never used
  // (q == 0 for high, q == 1 for low).
  double tau_low = 0.0;
  double tau_high = 0.0;
  double q_hat = 0.0;  // pi*_{high,0} / pi*_0
};

TimeShareMetrics timeshare_metrics(const TimeShareConfig& config, std::span<const double> pi);
TimeShareMetrics timeshare_steady(const TimeShareConfig& config);

// One metrics record per q value, in grid order.
std::vector<TimeShareMetrics> timeshare_curve(const TimeShareConfig& config,
                                              std::span<const double> q_grid);

// After each delivery S sleeps with probability p_sleep and then stays asleep
// with p_sleep per slot. The relay keeps walking while S sleeps.
struct SleepConfig {
  LinkConfig link;
  double p_sleep = 0.0;
};

void validate(const SleepConfig& config);

// 4N states: First, Retransmit, Both, Sleep.
ChainMatrix build_sleep_chain(const SleepConfig& config);

struct SleepMetrics {
  SteadyMetrics steady;  // energies count transmitting slots only
  double sleep_mass = 0.0;
};

SleepMetrics sleep_metrics(const SleepConfig& config, std::span<const double> pi);
SleepMetrics sleep_steady(const SleepConfig& config);

}  // namespace mrlink
