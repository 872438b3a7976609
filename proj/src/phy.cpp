#include "mrlink/phy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mrlink/error.hpp"

namespace mrlink {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

McsParams McsParams::from_db(double a_n, double g_n, double gamma_threshold_db,
                             int bits_per_symbol, int packet_length) {
  McsParams m;
  m.a_n = a_n;
  m.g_n = g_n;
  m.gamma_threshold = db_to_linear(gamma_threshold_db);
  m.bits_per_symbol = bits_per_symbol;
  m.packet_length = packet_length;
  return m;
}

void validate(const McsParams& mcs) {
  if (!(mcs.a_n > 0.0)) throw InvalidArgument("a_n must be > 0");
  if (!(mcs.g_n > 0.0)) throw InvalidArgument("g_n must be > 0");
  if (!(mcs.gamma_threshold > 0.0)) throw InvalidArgument("gamma threshold must be > 0");
  if (mcs.bits_per_symbol < 1) throw InvalidArgument("bits per symbol must be >= 1");
  if (mcs.packet_length < 1) throw InvalidArgument("packet length must be >= 1");
}

void validate(const ChannelParams& channel) {
  if (!(channel.noise_density > 0.0)) throw InvalidArgument("noise density must be > 0");
  if (!(channel.path_loss_exponent > 0.0)) throw InvalidArgument("path-loss exponent must be > 0");
  if (!(channel.antenna_gain > 0.0)) throw InvalidArgument("antenna gain must be > 0");
  if (!(channel.energy_max > 0.0)) throw InvalidArgument("energy_max must be > 0");
}

double per_rayleigh(double energy, const McsParams& mcs, const ChannelParams& channel,
                    double distance) {
  if (!(energy > 0.0)) throw InvalidArgument("symbol energy must be > 0");
  if (!(distance > 0.0)) throw InvalidArgument("hop distance must be > 0");

  const double noise = channel.noise_density * std::pow(distance, channel.path_loss_exponent);
  const double inv_snr = noise / (energy * channel.antenna_gain);
  const double gamma = mcs.gamma_threshold;

  const double faded = mcs.a_n / (1.0 + mcs.g_n / inv_snr) * std::exp(-gamma * (mcs.g_n + inv_snr));
  const double outage = -std::expm1(-gamma * inv_snr);
  return std::clamp(faded + outage, 0.0, 1.0);
}

PerModel PerModel::from_name(std::string_view name, double fixed_value) {
  if (name == "rayleigh-uncoded") return {PerModelKind::RayleighUncoded, 0.0};
  if (name == "fixed") {
    if (!(fixed_value >= 0.0 && fixed_value <= 1.0)) {
      throw InvalidArgument("fixed PER must be in [0,1]");
    }
    return {PerModelKind::Fixed, fixed_value};
  }
  throw InvalidArgument("unknown PER model '" + std::string(name) + "'");
}

std::string PerModel::name() const {
  return kind == PerModelKind::Fixed ? "fixed" : "rayleigh-uncoded";
}

double per_general(const PerModel& model, double energy, const McsParams& mcs,
                   const ChannelParams& channel, double distance) {
  switch (model.kind) {
    case PerModelKind::RayleighUncoded:
      return per_rayleigh(energy, mcs, channel, distance);
    case PerModelKind::Fixed:
      if (!(energy > 0.0)) throw InvalidArgument("symbol energy must be > 0");
      return model.fixed_value;
  }
  throw InvalidArgument("unknown PER model");
}

}  // namespace mrlink
