#include "mrlink/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "mrlink/error.hpp"

namespace mrlink {
namespace {

constexpr const char* kRngName = "mt19937_64";

// Uniform in [0,1) from the top 53 bits; std::uniform_real_distribution is
// not reproducible across standard libraries.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : engine_(seed) {}
  double operator()() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

// Cumulative one-step transition rows restricted to non-zero entries.
class WalkSampler {
 public:
  explicit WalkSampler(const Matrix& one_step) {
    const int n = static_cast<int>(one_step.rows());
    rows_.resize(n);
    for (int i = 0; i < n; ++i) {
      double cumulative = 0.0;
      for (int j = 0; j < n; ++j) {
        if (one_step(i, j) <= 0.0) continue;
        cumulative += one_step(i, j);
        rows_[i].push_back({j, cumulative});
      }
      rows_[i].back().second = std::numeric_limits<double>::infinity();
    }
  }

  int step(int from, double u) const {
    const auto& row = rows_[from];
    for (const auto& [to, cumulative] : row) {
      if (u < cumulative) return to;
    }
    return row.back().first;
  }

 private:
  std::vector<std::vector<std::pair<int, double>>> rows_;
};

int draw_index(const std::vector<double>& weights, double u) {
  double cumulative = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cumulative += weights[i];
    if (u < cumulative) return static_cast<int>(i);
  }
  return static_cast<int>(weights.size()) - 1;
}

struct Batch {
  std::uint64_t slots = 0;
  std::uint64_t delivered = 0;
  std::uint64_t delivered_high = 0;
  std::array<std::uint64_t, 2> source_slots{};
  std::uint64_t delay_sum = 0;
};

BatchEstimate mean_estimate(const std::vector<double>& values) {
  const double b = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= b;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, values.size() > 1 ? std::sqrt(ss / (b - 1.0) / b) : 0.0};
}

// Ratio sum(y)/sum(x) with delta-method batch standard error.
BatchEstimate ratio_estimate(const std::vector<double>& y, const std::vector<double>& x) {
  const double b = static_cast<double>(y.size());
  double sy = 0.0;
  double sx = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    sy += y[k];
    sx += x[k];
  }
  if (!(sx > 0.0)) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan};
  }
  const double ratio = sy / sx;
  double ss = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    const double r = y[k] - ratio * x[k];
    ss += r * r;
  }
  const double se = y.size() > 1 ? std::sqrt(ss / (b * (b - 1.0))) / (sx / b) : 0.0;
  return {ratio, se};
}

}  // namespace

Scenario parse_scenario(std::string_view name) {
  if (name == "single-level") return Scenario::SingleLevel;
  if (name == "time-share") return Scenario::TimeShare;
  if (name == "sleep") return Scenario::Sleep;
  throw InvalidArgument("unknown simulation scenario '" + std::string(name) + "'");
}

std::string scenario_name(Scenario scenario) {
  switch (scenario) {
    case Scenario::SingleLevel: return "single-level";
    case Scenario::TimeShare: return "time-share";
    case Scenario::Sleep: return "sleep";
  }
  return "unknown";
}

void validate(const SimConfig& config) {
  validate(config.link);
  if (config.slots <= config.warmup) throw InvalidArgument("slots must exceed warmup");
  if (config.batches < 1) throw InvalidArgument("batches must be >= 1");
  if (config.slots - config.warmup < static_cast<std::uint64_t>(config.batches)) {
    throw InvalidArgument("fewer measured slots than batches");
  }
  constexpr std::uint64_t kMaxSlots = std::uint64_t{1} << 52;
  if (config.slots > kMaxSlots) throw InvalidArgument("slot count too large for the counters");
  if (config.scenario == Scenario::TimeShare) {
    if (!(config.q >= 0.0 && config.q <= 1.0)) throw InvalidArgument("q out of [0,1]");
    if (!(config.energy_low > 0.0) || config.energy_low > config.energy_high ||
        config.energy_high > config.link.channel.energy_max) {
      throw InvalidArgument("time-share energies must satisfy 0 < low <= high <= energy_max");
    }
  }
  if (config.scenario == Scenario::Sleep && !(config.p_sleep >= 0.0 && config.p_sleep < 1.0)) {
    throw InvalidArgument("p_sleep out of [0,1)");
  }
}

SimOutcome simulate(const SimConfig& config) {
  validate(config);
  const LinkConfig& link = config.link;
  const bool timeshare = config.scenario == Scenario::TimeShare;
  const bool sleep_mode = config.scenario == Scenario::Sleep;

  std::array<double, 2> source_energy{link.energy_source, link.energy_source};
  std::array<double, 2> relay_energy{link.energy_relay, link.energy_relay};
  if (timeshare) {
    source_energy = {config.energy_low, config.energy_high};
    relay_energy = source_energy;
  }
  std::array<HopErrorRates, 2> per{
      hop_error_rates(link, source_energy[0], relay_energy[0]),
      hop_error_rates(link, source_energy[1], relay_energy[1])};

  const WalkSampler walker(link.walk.one_step);
  Uniform uniform(config.seed);

  const auto fresh_level = [&]() -> int {
    if (!timeshare) return 0;
    return uniform() < config.q ? 1 : 0;
  };

  int position = draw_index(walk_stationary(link.walk).mass, uniform());
  StateKind state = StateKind::First;
  int level = fresh_level();
  std::uint64_t cycle_start = 0;

  const std::uint64_t measured = config.slots - config.warmup;
  const auto batches = static_cast<std::uint64_t>(config.batches);
  std::vector<Batch> batch(batches);

  SimOutcome out;
  out.seed = config.seed;
  out.rng = kRngName;
  out.measured_slots = measured;
  std::array<std::uint64_t, 2> relay_slots{};

  for (std::uint64_t t = 0; t < config.slots; ++t) {
    Batch* b = nullptr;
    if (t >= config.warmup) {
      b = &batch[(t - config.warmup) * batches / measured];
      ++b->slots;
    }
    const int i = position;
    StateKind next = state;
    switch (state) {
      case StateKind::First:
      case StateKind::Retransmit:
        if (b) ++b->source_slots[level];
        next = uniform() >= per[level].source[i] ? StateKind::Both : StateKind::Retransmit;
        break;
      case StateKind::Both:
        if (b) {
          ++b->source_slots[level];
          ++relay_slots[level];
        }
        if (uniform() >= per[level].relay[i]) {
          const std::uint64_t delay = t - cycle_start + 1;
          cycle_start = t + 1;
          if (b) {
            ++b->delivered;
            if (level == 1) ++b->delivered_high;
            b->delay_sum += delay;
            if (out.delay_counts.size() <= delay) out.delay_counts.resize(delay + 1, 0);
            ++out.delay_counts[delay];
          }
          if (sleep_mode && uniform() < config.p_sleep) {
            next = StateKind::Sleep;
          } else {
            next = StateKind::First;
          }
          level = fresh_level();
        } else {
          next = StateKind::Both;
        }
        break;
      case StateKind::Sleep:
        next = uniform() < config.p_sleep ? StateKind::Sleep : StateKind::First;
        break;
    }
    for (int k = 0; k < link.walk.steps; ++k) position = walker.step(position, uniform());
    state = next;
  }

  const double length_s = link.mcs_source.packet_length;
  const double length_r = link.mcs_relay.packet_length;
  std::uint64_t delay_sum = 0;
  std::vector<double> thr(batches), energy(batches), delivered(batches), delays(batches),
      high(batches);
  for (std::uint64_t k = 0; k < batches; ++k) {
    const Batch& bk = batch[k];
    out.delivered += bk.delivered;
    out.delivered_high += bk.delivered_high;
    out.source_slots_low += bk.source_slots[0];
    out.source_slots_high += bk.source_slots[1];
    delay_sum += bk.delay_sum;
    thr[k] = static_cast<double>(bk.delivered) / static_cast<double>(bk.slots);
    energy[k] = (static_cast<double>(bk.source_slots[0]) * source_energy[0] +
                 static_cast<double>(bk.source_slots[1]) * source_energy[1]) *
                length_s;
    delivered[k] = static_cast<double>(bk.delivered);
    delays[k] = static_cast<double>(bk.delay_sum);
    high[k] = static_cast<double>(bk.delivered_high);
  }
  out.delivered_low = out.delivered - out.delivered_high;
  out.relay_slots_low = relay_slots[0];
  out.relay_slots_high = relay_slots[1];
  out.source_energy = (static_cast<double>(out.source_slots_low) * source_energy[0] +
                       static_cast<double>(out.source_slots_high) * source_energy[1]) *
                      length_s;
  out.relay_energy = (static_cast<double>(relay_slots[0]) * relay_energy[0] +
                      static_cast<double>(relay_slots[1]) * relay_energy[1]) *
                     length_r;

  out.throughput = static_cast<double>(out.delivered) / static_cast<double>(measured);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out.energy_per_packet =
      out.delivered > 0 ? out.source_energy / static_cast<double>(out.delivered) : nan;
  out.mean_delay = out.delivered > 0
                       ? static_cast<double>(delay_sum) / static_cast<double>(out.delivered)
                       : nan;

  out.throughput_batch = mean_estimate(thr);
  out.energy_batch = ratio_estimate(energy, delivered);
  out.delay_batch = ratio_estimate(delays, delivered);
  out.high_fraction_batch = ratio_estimate(high, delivered);
  return out;
}

EmpiricalCdf delay_histogram(const SimOutcome& outcome) {
  if (outcome.delivered == 0) throw InvalidArgument("no delivered packets to build a CDF from");
  EmpiricalCdf e;
  e.samples = outcome.delivered;
  e.cdf.resize(outcome.delay_counts.size());
  std::uint64_t running = 0;
  for (std::size_t t = 0; t < outcome.delay_counts.size(); ++t) {
    running += outcome.delay_counts[t];
    e.cdf[t] = static_cast<double>(running) / static_cast<double>(outcome.delivered);
  }
  return e;
}

}  // namespace mrlink
