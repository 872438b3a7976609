#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mrlink/chain.hpp"

namespace mrlink {

enum class Scenario { SingleLevel, TimeShare, Sleep };

Scenario parse_scenario(std::string_view name);
std::string scenario_name(Scenario scenario);

struct SimConfig {
  Scenario scenario = Scenario::SingleLevel;
  LinkConfig link;
  // TimeShare
  double energy_low = 1.0e-7;
  double energy_high = 1.8e-5;
  double q = 0.5;
  // Sleep
  double p_sleep = 0.0;

  std::uint64_t slots = 1'000'000;  // including warmup
  std::uint64_t warmup = 10'000;
  std::uint64_t seed = 1;
  int batches = 50;
};

void validate(const SimConfig& config);

struct BatchEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

struct SimOutcome {
  std::uint64_t seed = 0;
  std::string rng;
  std::uint64_t measured_slots = 0;
  std::uint64_t delivered = 0;
  std::uint64_t delivered_low = 0;
  std::uint64_t delivered_high = 0;
  // Source transmit slots per level (single-level and sleep use low only).
  std::uint64_t source_slots_low = 0;
  std::uint64_t source_slots_high = 0;
  std::uint64_t relay_slots_low = 0;
  std::uint64_t relay_slots_high = 0;
  double source_energy = 0.0;  // joules over the measured window
  double relay_energy = 0.0;

  double throughput = 0.0;         // delivered / measured_slots
  double energy_per_packet = 0.0;  // source_energy / delivered
  double mean_delay = 0.0;

  // Batch means over `batches` equal slices of the measured window. Energy
  // and delay are ratio estimators; their standard errors use the
  // linearized (delta-method) batch variance.
  BatchEstimate throughput_batch;
  BatchEstimate energy_batch;
  BatchEstimate delay_batch;
  BatchEstimate high_fraction_batch;  // time-share only

  // delay_counts[t] = number of delivered packets with delay t slots. Delay
  // counts slots since the previous delivery (for sleep mode this includes
  // the sleep run).
  std::vector<std::uint64_t> delay_counts;
};

// Identical configs give bit-identical outcomes.
SimOutcome simulate(const SimConfig& config);

struct EmpiricalCdf {
  std::vector<double> cdf;  // cdf[t] = fraction of delays <= t
  std::uint64_t samples = 0;
};

EmpiricalCdf delay_histogram(const SimOutcome& outcome);

}  // namespace mrlink
