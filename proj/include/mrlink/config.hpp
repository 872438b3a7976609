#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mrlink/chain.hpp"
#include "mrlink/protocols.hpp"
#include "mrlink/simulator.hpp"

namespace mrlink {

// Flat run description; one JSON key per field. Every field has a default,
// so "{}" is a valid spec.
struct RunSpec {
  // CLI subcommand run by "run"
  std::string scenario = "steady";

  // phy
  std::string per_model = "rayleigh-uncoded";
  double per_fixed_source = 0.0;
  double per_fixed_relay = 0.0;
  double mcs_a_n = 67.7328;
  double mcs_g_n = 0.9819;
  double mcs_gamma_db = 6.3281;
  int bits_per_symbol = 1;
  int packet_length = 1080;
  double noise_density = 1e-13;
  double path_loss_exponent = 3.5;
  double antenna_gain = 1.0;
  double energy_max = 2e-4;

  // mobility
  std::string geometry = "1d";
  double distance = 300.0;
  int positions = 10;
  int grid_nx = 10;
  int grid_ny = 10;
  double grid_scale = 30.0;
  int source_x = 1;
  int source_y = 1;
  int destination_x = 10;
  int destination_y = 10;
  double p_move = 0.98;
  int speed = 1;

  // link / protocols
  double energy_source = 1.8e-5;
  double energy_relay = 1.8e-5;
  double energy_low = 1.0e-7;
  double energy_high = 1.8e-5;
  double q = 0.5;
  double p_sleep = 0.0;
  int relay_position = 0;  // 0: best position

  // scenario lists
  std::vector<int> speeds{1, 2, 3, 4};
  std::vector<int> relay_counts{1, 2, 4, 8};
  std::vector<double> lambdas{0.5, 1.0, 2.0, 4.0};
  int horizon = 400;

  // simulator
  std::string sim_scenario = "single-level";
  std::int64_t sim_slots = 1'000'000;
  std::int64_t sim_warmup = 10'000;
  int sim_batches = 50;
  std::uint64_t seed = 1;

  // sweep axis; empty parameter means the subcommand's own default axis
  std::string sweep_parameter;
  std::string sweep_scale = "log";
  double sweep_min = 1e-7;
  double sweep_max = 2e-4;
  int sweep_points = 40;

  bool operator==(const RunSpec&) const = default;
};

// Throws ConfigError on malformed JSON, unknown keys or wrong value types.
RunSpec parse_run_spec(std::string_view json);
std::string dump_run_spec(const RunSpec& spec);

// Every violated invariant as "key: message"; empty when the spec is usable.
std::vector<std::string> validate_run_spec(const RunSpec& spec);

// Subcommand names accepted in RunSpec::scenario.
const std::vector<std::string>& scenario_names();
bool is_scenario(std::string_view name);

// Scalar numeric parameters addressable by name (for sweeps and the C API).
// "energy" is a write-only alias that sets energy_source and energy_relay.
std::vector<std::string> parameter_names();
bool is_parameter(std::string_view name);
void set_parameter(RunSpec& spec, std::string_view name, double value);
double get_parameter(const RunSpec& spec, std::string_view name);

// Grid for the configured sweep axis (linear or log spaced, endpoints
// included). Empty when sweep_parameter is empty.
std::vector<double> sweep_grid(const RunSpec& spec);
std::vector<double> make_grid(std::string_view scale, double lo, double hi, int points);

LinkConfig make_link(const RunSpec& spec);
TimeShareConfig make_timeshare(const RunSpec& spec);
SleepConfig make_sleep(const RunSpec& spec);
SimConfig make_sim(const RunSpec& spec);

}  // namespace mrlink
