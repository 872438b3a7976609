#pragma once

#include <string>
#include <string_view>

namespace mrlink {

double db_to_linear(double db);

// Modulation/coding fit constants for one transmitter.
struct McsParams {
  double a_n = 67.7328;
  double g_n = 0.9819;
  double gamma_threshold = 4.2930698;  // linear; use from_db for configured values
  int bits_per_symbol = 1;
  int packet_length = 1080;  // channel symbols

  static McsParams from_db(double a_n, double g_n, double gamma_threshold_db,
                           int bits_per_symbol, int packet_length);
};

struct ChannelParams {
  double noise_density = 1e-13;     // N0, joules
  double path_loss_exponent = 3.5;  // alpha
  double antenna_gain = 1.0;        // G
  double energy_max = 2e-4;         // peak symbol energy, joules
};

void validate(const McsParams& mcs);
void validate(const ChannelParams& channel);

// Average packet error rate of an uncoded packet over flat Rayleigh fading,
// clamped to [0, 1]. The result depends on energy, distance, N0 and G only
// through the mean SNR E*G / (N0 * r^alpha).
double per_rayleigh(double energy, const McsParams& mcs, const ChannelParams& channel,
                    double distance);

enum class PerModelKind { RayleighUncoded, Fixed };

// PER model selection by name. "fixed" returns a configured constant and
// ignores energy and distance.
struct PerModel {
  PerModelKind kind = PerModelKind::RayleighUncoded;
  double fixed_value = 0.0;

  static PerModel from_name(std::string_view name, double fixed_value = 0.0);
  std::string name() const;
};

double per_general(const PerModel& model, double energy, const McsParams& mcs,
                   const ChannelParams& channel, double distance);

}  // namespace mrlink
