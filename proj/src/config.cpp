#include "mrlink/config.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"
#include "mrlink/error.hpp"

namespace mrlink {
namespace {

using nlohmann::json;

// Accessors for one scalar numeric field.
struct Param {
  std::function<double(const RunSpec&)> get;
  std::function<void(RunSpec&, double)> set;
  bool integral = false;
};

int as_int(std::string_view name, double v) {
  if (!std::isfinite(v) || v != std::floor(v) || std::fabs(v) > 2147483647.0) {
    throw InvalidArgument(std::string(name) + " must be an integer");
  }
  return static_cast<int>(v);
}

std::int64_t as_int64(std::string_view name, double v) {
  if (!std::isfinite(v) || v != std::floor(v) || std::fabs(v) > 9.0e15) {
    throw InvalidArgument(std::string(name) + " must be an integer");
  }
  return static_cast<std::int64_t>(v);
}

template <class T>
Param field(T RunSpec::*member, std::string_view name) {
  Param p;
  p.integral = !std::is_same_v<T, double>;
  p.get = [member](const RunSpec& s) { return static_cast<double>(s.*member); };
  if constexpr (std::is_same_v<T, double>) {
    p.set = [member](RunSpec& s, double v) { s.*member = v; };
  } else if constexpr (std::is_same_v<T, int>) {
    p.set = [member, name](RunSpec& s, double v) { s.*member = as_int(name, v); };
  } else {
    p.set = [member, name](RunSpec& s, double v) {
      s.*member = static_cast<T>(as_int64(name, v));
    };
  }
  return p;
}

const std::map<std::string, Param, std::less<>>& params() {
  static const std::map<std::string, Param, std::less<>> table = [] {
    std::map<std::string, Param, std::less<>> t;
#define MRL_FIELD(name) t.emplace(#name, field(&RunSpec::name, #name))
    MRL_FIELD(per_fixed_source);
    MRL_FIELD(per_fixed_relay);
    MRL_FIELD(mcs_a_n);
    MRL_FIELD(mcs_g_n);
    MRL_FIELD(mcs_gamma_db);
    MRL_FIELD(bits_per_symbol);
    MRL_FIELD(packet_length);
    MRL_FIELD(noise_density);
    MRL_FIELD(path_loss_exponent);
    MRL_FIELD(antenna_gain);
    MRL_FIELD(energy_max);
    MRL_FIELD(distance);
    MRL_FIELD(positions);
    MRL_FIELD(grid_nx);
    MRL_FIELD(grid_ny);
    MRL_FIELD(grid_scale);
    MRL_FIELD(source_x);
    MRL_FIELD(source_y);
    MRL_FIELD(destination_x);
    MRL_FIELD(destination_y);
    MRL_FIELD(p_move);
    MRL_FIELD(speed);
    MRL_FIELD(energy_source);
    MRL_FIELD(energy_relay);
    MRL_FIELD(energy_low);
    MRL_FIELD(energy_high);
    MRL_FIELD(q);
    MRL_FIELD(p_sleep);
    MRL_FIELD(relay_position);
    MRL_FIELD(horizon);
    MRL_FIELD(sim_slots);
    MRL_FIELD(sim_warmup);
    MRL_FIELD(sim_batches);
    MRL_FIELD(sweep_min);
    MRL_FIELD(sweep_max);
    MRL_FIELD(sweep_points);
#undef MRL_FIELD
    return t;
  }();
  return table;
}

template <class T>
void read(const json& doc, const char* key, T& out) {
  const auto it = doc.find(key);
  if (it == doc.end()) return;
  try {
    if constexpr (std::is_same_v<T, std::string>) {
      if (!it->is_string()) throw ConfigError(std::string(key) + ": expected a string");
      out = it->template get<std::string>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!it->is_number_integer() &&
          !(it->is_number_float() && it->template get<double>() == std::floor(it->template get<double>()))) {
        throw ConfigError(std::string(key) + ": expected an integer");
      }
      if constexpr (std::is_unsigned_v<T>) {
        if (it->is_number_integer() && !it->is_number_unsigned()) {
          throw ConfigError(std::string(key) + ": expected a non-negative integer");
        }
      }
      out = it->is_number_float() ? static_cast<T>(it->template get<double>())
                                  : it->template get<T>();
    } else if constexpr (std::is_same_v<T, double>) {
      if (!it->is_number()) throw ConfigError(std::string(key) + ": expected a number");
      out = it->template get<double>();
    } else {
      if (!it->is_array()) throw ConfigError(std::string(key) + ": expected an array");
      out = it->template get<T>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string(key) + ": " + e.what());
  }
}

const char* const kStringKeys[] = {"scenario", "per_model", "geometry", "sim_scenario", "sweep_parameter",
                                   "sweep_scale"};
const char* const kListKeys[] = {"speeds", "relay_counts", "lambdas"};

}  // namespace

RunSpec parse_run_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");

  for (const auto& [key, value] : doc.items()) {
    bool known = params().count(key) > 0 || key == "seed";
    for (const char* k : kStringKeys) known = known || key == k;
    for (const char* k : kListKeys) known = known || key == k;
    if (!known) throw ConfigError("unknown key '" + key + "'");
  }

  RunSpec spec;
  read(doc, "scenario", spec.scenario);
  read(doc, "per_model", spec.per_model);
  read(doc, "geometry", spec.geometry);
  read(doc, "sim_scenario", spec.sim_scenario);
  read(doc, "sweep_parameter", spec.sweep_parameter);
  read(doc, "sweep_scale", spec.sweep_scale);
  read(doc, "speeds", spec.speeds);
  read(doc, "relay_counts", spec.relay_counts);
  read(doc, "lambdas", spec.lambdas);
  read(doc, "seed", spec.seed);

  for (const auto& [key, param] : params()) {
    const auto it = doc.find(key);
    if (it == doc.end()) continue;
    if (!it->is_number()) throw ConfigError(key + ": expected a number");
    try {
      param.set(spec, it->get<double>());
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
  }
  return spec;
}

std::string dump_run_spec(const RunSpec& spec) {
  json doc = json::object();
  doc["scenario"] = spec.scenario;
  doc["per_model"] = spec.per_model;
  doc["geometry"] = spec.geometry;
  doc["sim_scenario"] = spec.sim_scenario;
  doc["sweep_parameter"] = spec.sweep_parameter;
  doc["sweep_scale"] = spec.sweep_scale;
  doc["speeds"] = spec.speeds;
  doc["relay_counts"] = spec.relay_counts;
  doc["lambdas"] = spec.lambdas;
  doc["seed"] = spec.seed;
  for (const auto& [key, param] : params()) {
    if (param.integral) {
      doc[key] = static_cast<std::int64_t>(param.get(spec));
    } else {
      doc[key] = param.get(spec);
    }
  }
  // nlohmann prints doubles with max_digits10, so values round-trip exactly.
  return doc.dump(2) + "\n";
}

std::vector<std::string> validate_run_spec(const RunSpec& s) {
  std::vector<std::string> d;
  auto check = [&d](bool ok, std::string msg) {
    if (!ok) d.push_back(std::move(msg));
  };

  check(is_scenario(s.scenario), "scenario: unknown scenario '" + s.scenario + "'");
  check(s.per_model == "rayleigh-uncoded" || s.per_model == "fixed",
        "per_model: unknown PER model '" + s.per_model + "'");
  check(s.per_fixed_source >= 0.0 && s.per_fixed_source <= 1.0,
        "per_fixed_source: out of [0,1]");
  check(s.per_fixed_relay >= 0.0 && s.per_fixed_relay <= 1.0, "per_fixed_relay: out of [0,1]");
  check(s.mcs_a_n > 0.0, "mcs_a_n: must be > 0");
  check(s.mcs_g_n > 0.0, "mcs_g_n: must be > 0");
  check(std::isfinite(s.mcs_gamma_db), "mcs_gamma_db: must be finite");
  check(s.bits_per_symbol >= 1, "bits_per_symbol: must be >= 1");
  check(s.packet_length >= 1, "packet_length: must be >= 1");
  check(s.noise_density > 0.0, "noise_density: must be > 0");
  check(s.path_loss_exponent > 0.0, "path_loss_exponent: must be > 0");
  check(s.antenna_gain > 0.0, "antenna_gain: must be > 0");
  check(s.energy_max > 0.0, "energy_max: must be > 0");

  check(s.geometry == "1d" || s.geometry == "2d", "geometry: must be \"1d\" or \"2d\"");
  if (s.geometry == "2d") {
    check(s.grid_nx >= 1 && s.grid_ny >= 1, "grid_nx/grid_ny: grid must be non-empty");
    check(s.grid_scale > 0.0, "grid_scale: must be > 0");
    check(s.source_x >= 1 && s.source_x <= s.grid_nx && s.source_y >= 1 && s.source_y <= s.grid_ny,
          "source_x/source_y: outside grid");
    check(s.destination_x >= 1 && s.destination_x <= s.grid_nx && s.destination_y >= 1 &&
              s.destination_y <= s.grid_ny,
          "destination_x/destination_y: outside grid");
  } else {
    check(s.distance > 0.0, "distance: must be > 0");
    check(s.positions >= 1, "positions: must be >= 1");
  }
  check(s.p_move >= 0.0 && s.p_move <= 1.0, "p_move: out of [0,1]");
  check(s.speed >= 0, "speed: must be >= 0");

  auto energy = [&](double e, const char* key) {
    check(e > 0.0 && e <= s.energy_max,
          std::string(key) + ": must be in (0, energy_max]");
  };
  energy(s.energy_source, "energy_source");
  energy(s.energy_relay, "energy_relay");
  energy(s.energy_low, "energy_low");
  energy(s.energy_high, "energy_high");
  check(s.energy_low <= s.energy_high, "energy_low: energy_low > energy_high (ordering violation)");
  check(s.q >= 0.0 && s.q <= 1.0, "q: q out of [0,1]");
  check(s.p_sleep >= 0.0 && s.p_sleep < 1.0, "p_sleep: out of [0,1)");
  const int n = s.geometry == "2d" ? s.grid_nx * s.grid_ny : s.positions;
  check(s.relay_position >= 0 && s.relay_position <= n,
        "relay_position: must be 0 (best) or a valid position");

  check(!s.speeds.empty(), "speeds: must be non-empty");
  for (int v : s.speeds) check(v >= 0, "speeds: entries must be >= 0");
  check(!s.relay_counts.empty(), "relay_counts: must be non-empty");
  for (int m : s.relay_counts) check(m >= 1, "relay_counts: entries must be >= 1");
  check(!s.lambdas.empty(), "lambdas: must be non-empty");
  for (double l : s.lambdas) check(l > 0.0, "lambdas: entries must be > 0");
  check(s.horizon >= 2, "horizon: must be >= 2");

  check(s.sim_scenario == "single-level" || s.sim_scenario == "time-share" ||
            s.sim_scenario == "sleep",
        "sim_scenario: must be single-level, time-share or sleep");
  check(s.sim_warmup >= 0, "sim_warmup: must be >= 0");
  check(s.sim_slots > s.sim_warmup, "sim_slots: must exceed sim_warmup");
  check(s.sim_batches >= 1, "sim_batches: must be >= 1");

  if (!s.sweep_parameter.empty()) {
    check(s.sweep_parameter == "energy" || is_parameter(s.sweep_parameter),
          "sweep_parameter: unknown parameter '" + s.sweep_parameter + "'");
    check(s.sweep_scale == "linear" || s.sweep_scale == "log",
          "sweep_scale: must be \"linear\" or \"log\"");
    check(s.sweep_points >= 1, "sweep_points: grid must be non-empty");
    check(s.sweep_min <= s.sweep_max, "sweep_min: must not exceed sweep_max");
    if (s.sweep_scale == "log") check(s.sweep_min > 0.0, "sweep_min: log grid needs min > 0");
  }
  return d;
}

std::vector<std::string> parameter_names() {
  std::vector<std::string> names;
  for (const auto& [key, _] : params()) names.push_back(key);
  return names;
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{
      "walk", "per", "steady", "curve", "stationary-position", "stationary-sweep",
      "timeshare", "sleep", "multirelay", "simulate", "validate"};
  return names;
}

bool is_scenario(std::string_view name) {
  for (const auto& n : scenario_names())
    if (n == name) return true;
  return false;
}

bool is_parameter(std::string_view name) { return params().find(name) != params().end(); }

void set_parameter(RunSpec& spec, std::string_view name, double value) {
  if (name == "energy") {
    spec.energy_source = value;
    spec.energy_relay = value;
    return;
  }
  const auto it = params().find(name);
  if (it == params().end()) throw InvalidArgument("unknown parameter '" + std::string(name) + "'");
  it->second.set(spec, value);
}

double get_parameter(const RunSpec& spec, std::string_view name) {
  if (name == "energy") return spec.energy_source;
  const auto it = params().find(name);
  if (it == params().end()) throw InvalidArgument("unknown parameter '" + std::string(name) + "'");
  return it->second.get(spec);
}

std::vector<double> make_grid(std::string_view scale, double lo, double hi, int points) {
  if (points < 1) throw InvalidArgument("grid must have at least one point");
  if (lo > hi) throw InvalidArgument("grid minimum exceeds maximum");
  const bool log_scale = scale == "log";
  if (!log_scale && scale != "linear") throw InvalidArgument("grid scale must be linear or log");
  if (log_scale && !(lo > 0.0)) throw InvalidArgument("log grid needs a positive minimum");

  std::vector<double> grid(points);
  if (points == 1) {
    grid[0] = lo;
    return grid;
  }
  const double a = log_scale ? std::log(lo) : lo;
  const double b = log_scale ? std::log(hi) : hi;
  for (int k = 0; k < points; ++k) {
    const double x = a + (b - a) * k / (points - 1);
    grid[k] = log_scale ? std::exp(x) : x;
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

std::vector<double> sweep_grid(const RunSpec& spec) {
  if (spec.sweep_parameter.empty()) return {};
  return make_grid(spec.sweep_scale, spec.sweep_min, spec.sweep_max, spec.sweep_points);
}

LinkConfig make_link(const RunSpec& s) {
  LinkConfig c;
  if (s.geometry == "2d") {
    c.geometry = Geometry2D{s.grid_nx, s.grid_ny, s.grid_scale, {s.source_x, s.source_y},
                            {s.destination_x, s.destination_y}};
  } else if (s.geometry == "1d") {
    c.geometry = Geometry1D{s.distance, s.positions};
  } else {
    throw InvalidArgument("geometry must be 1d or 2d");
  }
  c.walk = build_walk(c.geometry, s.p_move, s.speed);
  c.mcs_source =
      McsParams::from_db(s.mcs_a_n, s.mcs_g_n, s.mcs_gamma_db, s.bits_per_symbol, s.packet_length);
  c.mcs_relay = c.mcs_source;
  c.channel = ChannelParams{s.noise_density, s.path_loss_exponent, s.antenna_gain, s.energy_max};
  c.per_source = PerModel::from_name(s.per_model, s.per_fixed_source);
  c.per_relay = PerModel::from_name(s.per_model, s.per_fixed_relay);
  c.energy_source = s.energy_source;
  c.energy_relay = s.energy_relay;
  validate(c);
  return c;
}

TimeShareConfig make_timeshare(const RunSpec& s) {
  TimeShareConfig c;
  RunSpec base = s;
  base.energy_source = s.energy_low;
  base.energy_relay = s.energy_low;
  c.link = make_link(base);
  c.energy_low = s.energy_low;
  c.energy_high = s.energy_high;
  c.q = s.q;
  validate(c);
  return c;
}

SleepConfig make_sleep(const RunSpec& s) {
  SleepConfig c{make_link(s), s.p_sleep};
  validate(c);
  return c;
}

SimConfig make_sim(const RunSpec& s) {
  SimConfig c;
  c.scenario = parse_scenario(s.sim_scenario);
  if (c.scenario == Scenario::TimeShare) {
    RunSpec base = s;
    base.energy_source = s.energy_low;
    base.energy_relay = s.energy_low;
    c.link = make_link(base);
  } else {
    c.link = make_link(s);
  }
  c.energy_low = s.energy_low;
  c.energy_high = s.energy_high;
  c.q = s.q;
  c.p_sleep = s.p_sleep;
  if (s.sim_slots <= 0 || s.sim_warmup < 0) throw InvalidArgument("simulation slot counts must be positive");
  c.slots = static_cast<std::uint64_t>(s.sim_slots);
  c.warmup = static_cast<std::uint64_t>(s.sim_warmup);
  c.seed = s.seed;
  c.batches = s.sim_batches;
  validate(c);
  return c;
}

}  // namespace mrlink
