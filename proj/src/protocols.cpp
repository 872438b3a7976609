#include "mrlink/protocols.hpp"

#include <cmath>
#include <limits>

#include "mrlink/error.hpp"

namespace mrlink {
namespace {

constexpr int kFirst = static_cast<int>(StateKind::First);
constexpr int kRetransmit = static_cast<int>(StateKind::Retransmit);
constexpr int kBoth = static_cast<int>(StateKind::Both);
constexpr int kSleep = static_cast<int>(StateKind::Sleep);

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

void validate(const TimeShareConfig& config) {
  LinkConfig link = config.link;
  link.energy_source = config.energy_low;
  link.energy_relay = config.energy_low;
  validate(link);
  if (!(config.q >= 0.0 && config.q <= 1.0)) throw InvalidArgument("q out of [0,1]");
  if (!(config.energy_low > 0.0)) throw InvalidArgument("energy_low must be > 0");
  if (config.energy_low > config.energy_high) {
    throw InvalidArgument("energy_low must not exceed energy_high");
  }
  if (config.energy_high > config.link.channel.energy_max) {
    throw InvalidArgument("energy_high exceeds energy_max");
  }
}

ChainMatrix build_timeshare_chain(const TimeShareConfig& config) {
  validate(config);
  const int n = config.link.positions();
  const Matrix move = step_kernel(config.link.walk);
  const double q = config.q;

  ChainMatrix chain(6, n);
  Matrix& m = chain.matrix;
  for (EnergyLevel level : {EnergyLevel::Low, EnergyLevel::High}) {
    const double energy = level == EnergyLevel::Low ? config.energy_low : config.energy_high;
    const HopErrorRates rates = hop_error_rates(config.link, energy, energy);
    const int f = timeshare_block(level, StateKind::First) * n;
    const int r = timeshare_block(level, StateKind::Retransmit) * n;
    const int b = timeshare_block(level, StateKind::Both) * n;
    const int f_low = timeshare_block(EnergyLevel::Low, StateKind::First) * n;
    const int f_high = timeshare_block(EnergyLevel::High, StateKind::First) * n;
    for (int i = 0; i < n; ++i) {
      const double fail_s = rates.source[i];
      const double fail_r = rates.relay[i];
      for (int j = 0; j < n; ++j) {
        const double p = move(i, j);
        m(f + i, r + j) = fail_s * p;
        m(f + i, b + j) = (1.0 - fail_s) * p;
        m(r + i, r + j) = fail_s * p;
        m(r + i, b + j) = (1.0 - fail_s) * p;
        m(b + i, b + j) = fail_r * p;
        // Delivery: the next packet draws its level.
        m(b + i, f_low + j) = (1.0 - q) * (1.0 - fail_r) * p;
        m(b + i, f_high + j) = q * (1.0 - fail_r) * p;
      }
    }
  }
  return chain;
}

TimeShareMetrics timeshare_metrics(const TimeShareConfig& config, std::span<const double> pi) {
  const int n = config.link.positions();
  const ChainMatrix layout(6, n);
  if (static_cast<int>(pi.size()) != layout.size()) throw InvalidArgument("pi has wrong length");

  auto mass = [&](EnergyLevel level, StateKind kind) {
    return layout.block_mass(pi, timeshare_block(level, kind));
  };
  auto level_total = [&](EnergyLevel level) {
    return mass(level, StateKind::First) + mass(level, StateKind::Retransmit) +
           mass(level, StateKind::Both);
  };

  TimeShareMetrics out;
  out.pi.assign(pi.begin(), pi.end());
  out.q = config.q;
  out.low_first = mass(EnergyLevel::Low, StateKind::First);
  out.high_first = mass(EnergyLevel::High, StateKind::First);
  out.low_total = level_total(EnergyLevel::Low);
  out.high_total = level_total(EnergyLevel::High);
  out.throughput = out.low_first + out.high_first;
  if (!(out.throughput > 0.0)) throw NoDelivery("throughput is zero: the link never delivers");

  out.delay = 1.0 / out.throughput;
  out.tau_low = out.low_first > 0.0 ? out.low_total / out.low_first : kNaN;
  out.tau_high = out.high_first > 0.0 ? out.high_total / out.high_first : kNaN;
  out.q_hat = out.high_first / out.throughput;

  const int length = config.link.mcs_source.packet_length;
  out.energy_total =
      length * (config.energy_low * out.low_total + config.energy_high * out.high_total) /
      out.throughput;
  const double both_low = mass(EnergyLevel::Low, StateKind::Both);
  const double both_high = mass(EnergyLevel::High, StateKind::Both);
  out.energy_relay = config.link.mcs_relay.packet_length *
                     (config.energy_low * both_low + config.energy_high * both_high) /
                     out.throughput;
  return out;
}

TimeShareMetrics timeshare_steady(const TimeShareConfig& config) {
  const ChainMatrix chain = build_timeshare_chain(config);
  return timeshare_metrics(config, solve_stationary(chain));
}

std::vector<TimeShareMetrics> timeshare_curve(const TimeShareConfig& config,
                                              std::span<const double> q_grid) {
  std::vector<TimeShareMetrics> out;
  out.reserve(q_grid.size());
  TimeShareConfig at = config;
  for (double q : q_grid) {
    at.q = q;
    out.push_back(timeshare_steady(at));
  }
  return out;
}

void validate(const SleepConfig& config) {
  validate(config.link);
  if (!(config.p_sleep >= 0.0 && config.p_sleep < 1.0)) {
    throw InvalidArgument("p_sleep out of [0,1)");
  }
}

ChainMatrix build_sleep_chain(const SleepConfig& config) {
  validate(config);
  const LinkConfig& link = config.link;
  const int n = link.positions();
  const Matrix move = step_kernel(link.walk);
  const HopErrorRates rates = hop_error_rates(link, link.energy_source, link.energy_relay);
  const double sleep = config.p_sleep;

  ChainMatrix chain(4, n);
  Matrix& m = chain.matrix;
  for (int i = 0; i < n; ++i) {
    const double fail_s = rates.source[i];
    const double fail_r = rates.relay[i];
    for (int j = 0; j < n; ++j) {
      const double p = move(i, j);
      m(kFirst * n + i, kRetransmit * n + j) = fail_s * p;
      m(kFirst * n + i, kBoth * n + j) = (1.0 - fail_s) * p;
      m(kRetransmit * n + i, kRetransmit * n + j) = fail_s * p;
      m(kRetransmit * n + i, kBoth * n + j) = (1.0 - fail_s) * p;
      m(kBoth * n + i, kBoth * n + j) = fail_r * p;
      m(kBoth * n + i, kFirst * n + j) = (1.0 - sleep) * (1.0 - fail_r) * p;
      m(kBoth * n + i, kSleep * n + j) = sleep * (1.0 - fail_r) * p;
      m(kSleep * n + i, kSleep * n + j) = sleep * p;
      m(kSleep * n + i, kFirst * n + j) = (1.0 - sleep) * p;
    }
  }
  return chain;
}

SleepMetrics sleep_metrics(const SleepConfig& config, std::span<const double> pi) {
  const LinkConfig& link = config.link;
  const ChainMatrix layout(4, link.positions());
  if (static_cast<int>(pi.size()) != layout.size()) throw InvalidArgument("pi has wrong length");

  const double first = layout.block_mass(pi, kFirst);
  const double retransmit = layout.block_mass(pi, kRetransmit);
  const double both = layout.block_mass(pi, kBoth);
  if (!(first > 0.0)) throw NoDelivery("throughput is zero: the link never delivers");

  SleepMetrics out;
  out.steady.pi.assign(pi.begin(), pi.end());
  out.steady.throughput = first;
  out.steady.delay = 1.0 / first;
  out.steady.energy_total =
      link.energy_source * link.mcs_source.packet_length * (first + retransmit + both) / first;
  out.steady.energy_relay = link.energy_relay * link.mcs_relay.packet_length * both / first;
  out.sleep_mass = layout.block_mass(pi, kSleep);
  return out;
}

SleepMetrics sleep_steady(const SleepConfig& config) {
  const ChainMatrix chain = build_sleep_chain(config);
  return sleep_metrics(config, solve_stationary(chain));
}

}  // namespace mrlink
