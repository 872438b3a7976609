#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "mrlink/mrlink.h"

namespace mrlink::cli {
namespace {

struct Failure {
  int code;
  std::string message;
};

int exit_code(mrl_status s) {
  switch (s) {
    case MRL_OK:
      return 0;
    case MRL_ERR_INVALID_ARGUMENT:
    case MRL_ERR_CONFIG:
      return 2;
    case MRL_ERR_NUMERICAL:
    case MRL_ERR_NO_DELIVERY:
      return 3;
    default:
      return 1;
  }
}

void check(mrl_status s) {
  if (s != MRL_OK) throw Failure{exit_code(s), mrl_last_error()};
}

using ConfigPtr = std::unique_ptr<mrl_config, void (*)(mrl_config*)>;

ConfigPtr adopt(mrl_config* c) { return ConfigPtr(c, mrl_config_destroy); }

ConfigPtr clone(const mrl_config* c) {
  mrl_config* out = nullptr;
  check(mrl_config_clone(c, &out));
  return adopt(out);
}

// Two-call pattern for the C API's (buffer, capacity, count) outputs.
template <class T, class F>
std::vector<T> fetch(F&& f) {
  size_t n = 0;
  mrl_status s = f(nullptr, 0, &n);
  if (s == MRL_OK) return {};
  if (s != MRL_ERR_BUFFER_TOO_SMALL) check(s);
  std::vector<T> v(n);
  check(f(v.data(), n, &n));
  return v;
}

std::string fetch_string(const std::function<mrl_status(char*, size_t, size_t*)>& f) {
  size_t n = 0;
  mrl_status s = f(nullptr, 0, &n);
  if (s != MRL_ERR_BUFFER_TOO_SMALL) check(s);
  std::string out(n, '\0');
  check(f(out.data(), out.size(), &n));
  out.resize(n - 1);
  return out;
}

std::string get_string(const mrl_config* c, const char* name) {
  return fetch_string(
      [&](char* b, size_t cap, size_t* len) { return mrl_config_get_string(c, name, b, cap, len); });
}

double get_number(const mrl_config* c, const char* name) {
  double v = 0.0;
  check(mrl_config_get_number(c, name, &v));
  return v;
}

std::vector<double> get_list(const mrl_config* c, const char* name) {
  return fetch<double>(
      [&](double* v, size_t cap, size_t* n) { return mrl_config_get_list(c, name, v, cap, n); });
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num(uint64_t v) { return std::to_string(v); }
std::string num(int v) { return std::to_string(v); }

class Csv {
 public:
  explicit Csv(std::ostream& os) : os_(os) {}

  void row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) os_ << ',';
      os_ << cells[i];
    }
    os_ << '\n';
  }

 private:
  std::ostream& os_;
};

struct Axis {
  std::string name;  // empty: no sweep, one row at the configured values
  std::vector<double> values;
};

Axis make_axis(const std::string& scale, const std::string& name, double lo, double hi, int points) {
  Axis a{name, {}};
  a.values = fetch<double>([&](double* v, size_t cap, size_t* n) {
    return mrl_make_grid(scale.c_str(), lo, hi, points, v, cap, n);
  });
  return a;
}

// The configured sweep axis if any, else the subcommand's default.
Axis axis_for(const mrl_config* c, const std::function<Axis()>& fallback) {
  const std::string param = get_string(c, "sweep_parameter");
  if (param.empty()) return fallback();
  Axis a{param, {}};
  a.values = fetch<double>(
      [&](double* v, size_t cap, size_t* n) { return mrl_config_sweep_grid(c, v, cap, n); });
  return a;
}

Axis energy_axis(const mrl_config* c) {
  return axis_for(c, [&] {
    return make_axis(get_string(c, "sweep_scale"), "energy", get_number(c, "sweep_min"),
                     get_number(c, "sweep_max"), static_cast<int>(get_number(c, "sweep_points")));
  });
}

Axis no_axis(const mrl_config* c, const char* label) {
  return axis_for(c, [&] { return Axis{label, {get_number(c, label)}}; });
}

template <class F>
void for_axis(const mrl_config* base, const Axis& axis, F&& body) {
  for (double v : axis.values) {
    auto c = clone(base);
    check(mrl_config_set_number(c.get(), axis.name.c_str(), v));
    body(c.get(), v);
  }
}

// Points where the chain never delivers are reported as pi0 = 0 with
// infinite delay and energy instead of aborting the table.
bool delivers(mrl_status s) {
  if (s == MRL_ERR_NO_DELIVERY) return false;
  check(s);
  return true;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr mrl_steady_metrics kNoDelivery{0.0, kInf, kInf, kInf};

std::vector<std::string> steady_cells(const mrl_steady_metrics& m) {
  return {num(m.throughput), num(m.delay), num(m.energy_total), num(m.energy_relay)};
}

void append(std::vector<std::string>& a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
}

int position_count(const mrl_config* c) {
  int n = 0;
  check(mrl_position_count(c, &n));
  return n;
}

// --- subcommands -------------------------------------------------------

void cmd_walk(const mrl_config* c, Csv& csv) {
  const int n = position_count(c);
  auto kernel = fetch<double>(
      [&](double* v, size_t cap, size_t* k) { return mrl_walk_kernel(c, v, cap, k); });
  int fallback = 0;
  auto mass = fetch<double>([&](double* v, size_t cap, size_t* k) {
    return mrl_walk_stationary(c, v, cap, k, &fallback);
  });
  std::vector<std::string> header{"position", "stationary", "d_source", "d_relay"};
  for (int j = 1; j <= n; ++j) header.push_back("to_" + std::to_string(j));
  csv.row(header);
  for (int i = 1; i <= n; ++i) {
    double ds = 0, dr = 0;
    check(mrl_hop_distances(c, i, &ds, &dr));
    std::vector<std::string> row{num(i), num(mass[i - 1]), num(ds), num(dr)};
    for (int j = 0; j < n; ++j) row.push_back(num(kernel[(i - 1) * n + j]));
    csv.row(row);
  }
}

void cmd_per(const mrl_config* base, Csv& csv) {
  const Axis axis = energy_axis(base);
  csv.row({axis.name, "position", "d_source", "d_relay", "per_source", "per_relay"});
  for_axis(base, axis, [&](const mrl_config* c, double v) {
    const int n = position_count(c);
    const double es = get_number(c, "energy_source");
    const double er = get_number(c, "energy_relay");
    for (int i = 1; i <= n; ++i) {
      double ds = 0, dr = 0, ps = 0, pr = 0;
      check(mrl_hop_distances(c, i, &ds, &dr));
      check(mrl_per(c, 0, es, ds, &ps));
      check(mrl_per(c, 1, er, dr, &pr));
      csv.row({num(v), num(i), num(ds), num(dr), num(ps), num(pr)});
    }
  });
}

void cmd_steady(const mrl_config* base, Csv& csv) {
  const Axis axis = no_axis(base, "energy_source");
  csv.row({axis.name, "pi0", "tau", "E_total", "E_relay", "pi_F", "pi_R", "pi_B"});
  for_axis(base, axis, [&](const mrl_config* c, double v) {
    mrl_steady_metrics m{};
    std::vector<double> pi;
    size_t k = 0;
    mrl_status st = mrl_steady(c, &m, nullptr, 0, &k);
    if (st == MRL_ERR_BUFFER_TOO_SMALL) {
      pi.resize(k);
      st = mrl_steady(c, &m, pi.data(), k, &k);
    }
    if (!delivers(st)) m = kNoDelivery;
    const size_t n = pi.size() / 3;
    double mass[3] = {0, 0, 0};
    for (size_t b = 0; b < 3; ++b)
      for (size_t i = 0; i < n; ++i) mass[b] += pi[b * n + i];
    std::vector<std::string> row{num(v)};
    append(row, steady_cells(m));
    append(row, {num(mass[0]), num(mass[1]), num(mass[2])});
    csv.row(row);
  });
}

// Configured relay_position, or the best one when it is 0. Position 0 in the
// result means no position delivers.
std::pair<int, mrl_steady_metrics> optimal_stationary(const mrl_config* c) {
  int pos = static_cast<int>(get_number(c, "relay_position"));
  if (pos == 0 && !delivers(mrl_best_position(c, &pos))) return {0, kNoDelivery};
  mrl_steady_metrics m{};
  if (!delivers(mrl_stationary_position(c, pos, &m))) m = kNoDelivery;
  return {pos, m};
}

void cmd_curve(const mrl_config* base, Csv& csv) {
  const Axis axis = energy_axis(base);
  csv.row({"series", "speed", axis.name, "pi0", "tau", "E_total", "E_relay"});
  auto emit = [&](const char* series, int speed, const mrl_config* c, double v,
                  const mrl_steady_metrics& m) {
    (void)c;
    std::vector<std::string> row{series, num(speed), num(v)};
    append(row, steady_cells(m));
    csv.row(row);
  };
  for (double s : get_list(base, "speeds")) {
    auto sc = clone(base);
    check(mrl_config_set_number(sc.get(), "speed", s));
    for_axis(sc.get(), axis, [&](const mrl_config* c, double v) {
      mrl_steady_metrics m{};
      if (!delivers(mrl_steady(c, &m, nullptr, 0, nullptr))) m = kNoDelivery;
      emit("mobile", static_cast<int>(s), c, v, m);
    });
  }
  // A stationary relay does not move: speed column is 0.
  for_axis(base, axis, [&](const mrl_config* c, double v) {
    mrl_steady_metrics m{};
    if (!delivers(mrl_random_stationary(c, &m))) m = kNoDelivery;
    emit("random_stationary", 0, c, v, m);
  });
  for_axis(base, axis, [&](const mrl_config* c, double v) {
    mrl_steady_metrics m = optimal_stationary(c).second;
    emit("optimal_stationary", 0, c, v, m);
  });
}

void cmd_stationary_position(const mrl_config* c, Csv& csv) {
  const int n = position_count(c);
  const double es = get_number(c, "energy_source");
  const double er = get_number(c, "energy_relay");
  csv.row({"position", "d_source", "d_relay", "per_source", "per_relay", "pi0", "tau", "E_total",
           "E_relay"});
  for (int i = 1; i <= n; ++i) {
    double ds = 0, dr = 0, ps = 0, pr = 0;
    check(mrl_hop_distances(c, i, &ds, &dr));
    check(mrl_per(c, 0, es, ds, &ps));
    check(mrl_per(c, 1, er, dr, &pr));
    mrl_steady_metrics m{};
    if (!delivers(mrl_stationary_position(c, i, &m))) m = kNoDelivery;
    std::vector<std::string> row{num(i), num(ds), num(dr), num(ps), num(pr)};
    append(row, steady_cells(m));
    csv.row(row);
  }
}

void cmd_stationary_sweep(const mrl_config* base, Csv& csv) {
  const Axis axis = energy_axis(base);
  csv.row({axis.name, "position", "pi0", "tau", "E_total", "E_relay"});
  for_axis(base, axis, [&](const mrl_config* c, double v) {
    const auto [pos, m] = optimal_stationary(c);
    std::vector<std::string> row{num(v), num(pos)};
    append(row, steady_cells(m));
    csv.row(row);
  });
}

void cmd_timeshare(const mrl_config* base, Csv& csv) {
  const Axis axis = axis_for(base, [] { return make_axis("linear", "q", 0.0, 1.0, 21); });
  csv.row({axis.name, "pi0", "tau", "E_total", "E_relay", "q_hat", "tau_low", "tau_high",
           "pi_low_first", "pi_low", "pi_high_first", "pi_high"});
  for_axis(base, axis, [&](const mrl_config* c, double v) {
    mrl_timeshare_metrics m{};
    if (!delivers(mrl_timeshare(c, &m))) {
      const double q = get_number(c, "q");
      m = mrl_timeshare_metrics{q, 0.0, kInf, kInf, kInf, 0.0, 0.0, 0.0, 0.0, kInf, kInf, q};
    }
    csv.row({num(v), num(m.throughput), num(m.delay), num(m.energy_total), num(m.energy_relay),
             num(m.q_hat), num(m.tau_low), num(m.tau_high), num(m.low_first), num(m.low_total),
             num(m.high_first), num(m.high_total)});
  });
}

void cmd_sleep(const mrl_config* base, Csv& csv) {
  const Axis axis = axis_for(base, [] { return Axis{"p_sleep", {0.0, 0.3, 0.6, 0.9}}; });
  csv.row({axis.name, "pi0", "tau", "E_total", "E_relay", "sleep_mass"});
  for_axis(base, axis, [&](const mrl_config* c, double v) {
    mrl_sleep_metrics m{};
    if (!delivers(mrl_sleep(c, &m))) m = mrl_sleep_metrics{v, 0.0, kInf, kInf, kInf, 0.0};
    csv.row({num(v), num(m.throughput), num(m.delay), num(m.energy_total), num(m.energy_relay),
             num(m.sleep_mass)});
  });
}

struct DelayDist {
  std::vector<double> cdf;
  mrl_delay_summary summary{};
};

DelayDist delay_dist(const mrl_config* c) {
  mrl_delay_dist* raw = nullptr;
  check(mrl_delay_distribution(c, static_cast<int>(get_number(c, "horizon")),
                               MRL_DELAY_START_PACKET, &raw));
  std::unique_ptr<mrl_delay_dist, void (*)(mrl_delay_dist*)> d(raw, mrl_delay_dist_destroy);
  DelayDist out;
  check(mrl_delay_dist_summary(d.get(), &out.summary));
  out.cdf = fetch<double>(
      [&](double* v, size_t cap, size_t* n) { return mrl_delay_dist_cdf(d.get(), v, cap, n); });
  return out;
}

std::string label(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Smallest t with cdf[t] >= p, NaN when the horizon is too short.
double quantile(const std::vector<double>& cdf, double p) {
  for (size_t t = 0; t < cdf.size(); ++t)
    if (cdf[t] >= p) return static_cast<double>(t);
  return std::nan("");
}

double truncated_mean(const std::vector<double>& cdf) {
  double m = 0.0;
  for (double f : cdf) m += 1.0 - f;
  return m;
}

void cmd_multirelay(const mrl_config* c, Csv& csv, bool quantiles) {
  const DelayDist d = delay_dist(c);
  const size_t n = d.cdf.size();
  std::vector<std::pair<std::string, std::vector<double>>> series;
  for (double m : get_list(c, "relay_counts")) {
    std::vector<double> v(n);
    check(mrl_min_delay(d.cdf.data(), n, static_cast<int>(m), v.data()));
    series.emplace_back("min_m" + label(m), std::move(v));
  }
  for (double l : get_list(c, "lambdas")) {
    std::vector<double> v(n);
    check(mrl_poisson_min_delay(d.cdf.data(), n, l, v.data()));
    series.emplace_back("poisson_lambda_" + label(l), std::move(v));
  }
  if (quantiles) {
    // Means are truncated at the horizon (lower bounds on the true means).
    csv.row({"series", "mean_truncated", "q50", "q90", "q99", "tail_mass"});
    auto emit = [&](const std::string& name, const std::vector<double>& cdf) {
      csv.row({name, num(truncated_mean(cdf)), num(quantile(cdf, 0.5)), num(quantile(cdf, 0.9)),
               num(quantile(cdf, 0.99)), num(1.0 - cdf.back())});
    };
    emit("single", d.cdf);
    for (const auto& [name, cdf] : series) emit(name, cdf);
    return;
  }
  std::vector<std::string> header{"t", "cdf"};
  for (const auto& s : series) header.push_back(s.first);
  csv.row(header);
  for (size_t t = 0; t < n; ++t) {
    std::vector<std::string> row{num(static_cast<int>(t)), num(d.cdf[t])};
    for (const auto& s : series) row.push_back(num(s.second[t]));
    csv.row(row);
  }
}

struct Analytic {
  double pi0 = 0, tau = 0, energy = 0;
};

Analytic analytic_for(const mrl_config* c, const std::string& scenario) {
  if (scenario == "time-share") {
    mrl_timeshare_metrics m{};
    if (!delivers(mrl_timeshare(c, &m))) return {0.0, kInf, kInf};
    return {m.throughput, m.delay, m.energy_total};
  }
  if (scenario == "sleep") {
    mrl_sleep_metrics m{};
    if (!delivers(mrl_sleep(c, &m))) return {0.0, kInf, kInf};
    return {m.throughput, m.delay, m.energy_total};
  }
  mrl_steady_metrics m{};
  if (!delivers(mrl_steady(c, &m, nullptr, 0, nullptr))) return {0.0, kInf, kInf};
  return {m.throughput, m.delay, m.energy_total};
}

using SimPtr = std::unique_ptr<mrl_sim_result, void (*)(mrl_sim_result*)>;

SimPtr run_sim(const mrl_config* c) {
  mrl_sim_result* raw = nullptr;
  check(mrl_simulate(c, &raw));
  return SimPtr(raw, mrl_sim_destroy);
}

void cmd_simulate(const mrl_config* base, Csv& csv, bool histogram) {
  if (histogram) {
    auto r = run_sim(base);
    auto counts = fetch<uint64_t>([&](uint64_t* v, size_t cap, size_t* n) {
      return mrl_sim_delay_counts(r.get(), v, cap, n);
    });
    auto cdf = fetch<double>(
        [&](double* v, size_t cap, size_t* n) { return mrl_sim_delay_cdf(r.get(), v, cap, n); });
    csv.row({"t", "count", "cdf"});
    for (size_t t = 0; t < counts.size(); ++t)
      csv.row({num(static_cast<int>(t)), num(counts[t]), num(cdf[t])});
    return;
  }
  // Without a sweep there is a single row and no axis column.
  const bool single = get_string(base, "sweep_parameter").empty();
  const Axis axis = single ? Axis{} : axis_for(base, [] { return Axis{}; });
  std::vector<std::string> header{"scenario", "seed", "rng", "measured_slots", "delivered",
                                  "delivered_low", "delivered_high", "pi0", "pi0_se", "E_total",
                                  "E_total_se", "tau", "tau_se", "high_fraction",
                                  "high_fraction_se", "analytic_pi0", "analytic_E_total",
                                  "analytic_tau"};
  if (!single) header.insert(header.begin(), axis.name);
  csv.row(header);
  auto body = [&](const mrl_config* c, double v) {
    const std::string scenario = get_string(c, "sim_scenario");
    auto r = run_sim(c);
    mrl_sim_summary s{};
    check(mrl_sim_get_summary(r.get(), &s));
    const Analytic a = analytic_for(c, scenario);
    std::vector<std::string> row{
        scenario, num(s.seed), mrl_sim_rng_name(r.get()), num(s.measured_slots),
        num(s.delivered), num(s.delivered_low), num(s.delivered_high), num(s.throughput),
        num(s.throughput_se), num(s.energy_per_packet), num(s.energy_se), num(s.mean_delay),
        num(s.delay_se), num(s.high_fraction), num(s.high_fraction_se), num(a.pi0),
        num(a.energy), num(a.tau)};
    if (!single) row.insert(row.begin(), num(v));
    csv.row(row);
  };
  if (single) {
    body(base, 0.0);
  } else {
    for_axis(base, axis, body);
  }
}

std::vector<std::string> diagnostics(const mrl_config* c) {
  size_t count = 0;
  const std::string text = fetch_string([&](char* b, size_t cap, size_t* len) {
    return mrl_config_validate(c, b, cap, len, &count);
  });
  std::vector<std::string> lines;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) lines.push_back(line);
  return lines;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{2, "cannot read config file '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void apply_setting(mrl_config* c, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw Failure{2, "--set expects key=value, got '" + assignment + "'"};
  const std::string key = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);
  if (key == "seed") {
    try {
      size_t used = 0;
      const unsigned long long s = std::stoull(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      check(mrl_config_set_seed(c, s));
    } catch (const std::logic_error&) {
      throw Failure{2, "seed: expected an unsigned 64-bit integer"};
    }
    return;
  }
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (!value.empty() && end == value.c_str() + value.size()) {
    if (mrl_config_set_number(c, key.c_str(), v) == MRL_OK) return;
  }
  check(mrl_config_set_string(c, key.c_str(), value.c_str()));
}

struct Options {
  std::string config_path;
  std::string out_path;
  std::vector<std::string> settings;
  uint64_t seed = 0;
  bool seed_given = false;
  bool dump_config = false;
  bool quantiles = false;
  bool histogram = false;
};

ConfigPtr load(const Options& o) {
  mrl_config* raw = nullptr;
  if (o.config_path.empty()) {
    check(mrl_config_create(&raw));
  } else {
    check(mrl_config_from_json(read_file(o.config_path).c_str(), &raw));
  }
  auto c = adopt(raw);
  for (const auto& s : o.settings) apply_setting(c.get(), s);
  if (o.seed_given) check(mrl_config_set_seed(c.get(), o.seed));
  return c;
}

int execute(const std::string& command, const Options& o, std::ostream& out, std::ostream& err) {
  auto c = load(o);
  std::string name = command;
  if (name == "run") name = get_string(c.get(), "scenario");
  if (name == "run") throw Failure{2, "scenario 'run' is not runnable"};

  std::ostringstream buffer;
  if (o.dump_config) {
    buffer << fetch_string([&](char* b, size_t cap, size_t* len) {
      return mrl_config_to_json(c.get(), b, cap, len);
    });
  } else if (name == "validate") {
    const auto lines = diagnostics(c.get());
    for (const auto& l : lines) buffer << l << '\n';
    out << buffer.str();
    return lines.empty() ? 0 : 2;
  } else {
    const auto problems = diagnostics(c.get());
    if (!problems.empty()) {
      for (const auto& p : problems) err << "invalid spec: " << p << '\n';
      return 2;
    }
    Csv csv(buffer);
    if (name == "walk") {
      cmd_walk(c.get(), csv);
    } else if (name == "per") {
      cmd_per(c.get(), csv);
    } else if (name == "steady") {
      cmd_steady(c.get(), csv);
    } else if (name == "curve") {
      cmd_curve(c.get(), csv);
    } else if (name == "stationary-position") {
      cmd_stationary_position(c.get(), csv);
    } else if (name == "stationary-sweep") {
      cmd_stationary_sweep(c.get(), csv);
    } else if (name == "timeshare") {
      cmd_timeshare(c.get(), csv);
    } else if (name == "sleep") {
      cmd_sleep(c.get(), csv);
    } else if (name == "multirelay") {
      cmd_multirelay(c.get(), csv, o.quantiles);
    } else if (name == "simulate") {
      cmd_simulate(c.get(), csv, o.histogram);
    } else {
      throw Failure{2, "unknown scenario '" + name + "'"};
    }
  }

  if (o.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw Failure{2, "cannot open output file '" + o.out_path + "'"};
    f << buffer.str();
    if (!f.flush()) throw Failure{1, "failed writing '" + o.out_path + "'"};
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mobile-relay two-hop link analysis", "mrlink"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--config", o.config_path, "JSON run spec (defaults when omitted)");
  app.add_option("--out", o.out_path, "Write CSV here instead of standard output");
  auto* seed = app.add_option("--seed", o.seed, "RNG seed (overrides the config)");
  app.add_flag("--dump-config", o.dump_config, "Print the effective config as JSON and exit");
  app.add_option("--set", o.settings, "Override a config key: key=value (repeatable)");

  const std::vector<std::pair<std::string, std::string>> commands{
      {"walk", "Walk kernel P^s and its stationary law"},
      {"per", "Per-hop packet error rates at every relay position"},
      {"steady", "Stationary throughput, delay and energy of the mobile-relay link"},
      {"curve", "Energy/throughput curves: mobile per speed, random and optimal stationary"},
      {"stationary-position", "Stationary relay metrics at each position"},
      {"stationary-sweep", "Optimal (or fixed) stationary relay over the energy sweep"},
      {"timeshare", "Two-level time-sharing over q"},
      {"sleep", "Sleep mode over p_sleep"},
      {"multirelay", "First-passage delay CDF and minimum over several relays"},
      {"simulate", "Slot-level Monte Carlo run"},
      {"validate", "Report every invalid config entry"},
      {"run", "Run the subcommand named by the config's scenario key"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    if (name == "multirelay" || name == "run")
      sub->add_flag("--quantiles", o.quantiles, "Summary rows (mean, quantiles) per series");
    if (name == "simulate" || name == "run")
      sub->add_flag("--histogram", o.histogram, "Emit the delay histogram instead");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }
  o.seed_given = seed->count() > 0;

  std::string command;
  for (auto* sub : app.get_subcommands()) command = sub->get_name();

  try {
    return execute(command, o, out, err);
  } catch (const Failure& f) {
    err << "error: " << f.message << '\n';
    return f.code;
  }
}

}  // namespace mrlink::cli
