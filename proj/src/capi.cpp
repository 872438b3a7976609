#include "mrlink/mrlink.h"

#include <algorithm>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "mrlink/config.hpp"
#include "mrlink/error.hpp"
#include "mrlink/multirelay.hpp"
#include "mrlink/simulator.hpp"

struct mrl_config {
  mrlink::RunSpec spec;
};

struct mrl_delay_dist {
  mrlink::DelayDistribution dist;
};

struct mrl_sim_result {
  mrlink::SimOutcome outcome;
};

namespace {

thread_local std::string last_error;

struct BufferTooSmall {};

void fail_if_null(const void* p, const char* what) {
  if (p == nullptr) throw mrlink::InvalidArgument(std::string(what) + " is null");
}

template <class F>
mrl_status guard(F&& body) noexcept {
  try {
    body();
    last_error.clear();
    return MRL_OK;
  } catch (const BufferTooSmall&) {
    last_error = "buffer too small";
    return MRL_ERR_BUFFER_TOO_SMALL;
  } catch (const mrlink::ConfigError& e) {
    last_error = e.what();
    return MRL_ERR_CONFIG;
  } catch (const mrlink::NoDelivery& e) {
    last_error = e.what();
    return MRL_ERR_NO_DELIVERY;
  } catch (const mrlink::NumericalError& e) {
    last_error = e.what();
    return MRL_ERR_NUMERICAL;
  } catch (const mrlink::InvalidArgument& e) {
    last_error = e.what();
    return MRL_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return MRL_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return MRL_ERR_INTERNAL;
  }
}

void write_string(const std::string& s, char* buffer, size_t capacity, size_t* length) {
  fail_if_null(length, "length");
  *length = s.size() + 1;
  if (buffer == nullptr || capacity < *length) throw BufferTooSmall{};
  std::memcpy(buffer, s.c_str(), s.size() + 1);
}

template <class T, class U>
void write_array(const std::vector<U>& v, T* out, size_t capacity, size_t* count) {
  fail_if_null(count, "count");
  *count = v.size();
  if (v.empty()) return;
  if (out == nullptr || capacity < v.size()) throw BufferTooSmall{};
  std::transform(v.begin(), v.end(), out, [](const U& x) { return static_cast<T>(x); });
}

std::string* string_field(mrlink::RunSpec& s, const std::string& name) {
  if (name == "scenario") return &s.scenario;
  if (name == "per_model") return &s.per_model;
  if (name == "geometry") return &s.geometry;
  if (name == "sim_scenario") return &s.sim_scenario;
  if (name == "sweep_parameter") return &s.sweep_parameter;
  if (name == "sweep_scale") return &s.sweep_scale;
  throw mrlink::InvalidArgument("unknown string field '" + name + "'");
}

void copy_steady(const mrlink::SteadyMetrics& m, mrl_steady_metrics* out) {
  out->throughput = m.throughput;
  out->delay = m.delay;
  out->energy_total = m.energy_total;
  out->energy_relay = m.energy_relay;
}

mrlink::DelayStart to_start(mrl_delay_start start) {
  switch (start) {
    case MRL_DELAY_START_PACKET:
      return mrlink::DelayStart::PacketStart;
    case MRL_DELAY_START_WALK:
      return mrlink::DelayStart::WalkStationary;
  }
  throw mrlink::InvalidArgument("unknown delay start");
}

}  // namespace

extern "C" {

const char* mrl_version(void) { return "1.0.0"; }

const char* mrl_last_error(void) { return last_error.c_str(); }

const char* mrl_status_string(mrl_status status) {
  switch (status) {
    case MRL_OK:
      return "ok";
    case MRL_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case MRL_ERR_CONFIG:
      return "configuration error";
    case MRL_ERR_NUMERICAL:
      return "numerical error";
    case MRL_ERR_BUFFER_TOO_SMALL:
      return "buffer too small";
    case MRL_ERR_INTERNAL:
      return "internal error";
    case MRL_ERR_NO_DELIVERY:
      return "no delivery";
  }
  return "unknown status";
}

mrl_status mrl_config_create(mrl_config** out) {
  return guard([&] {
    fail_if_null(out, "out");
    *out = new mrl_config{};
  });
}

mrl_status mrl_config_from_json(const char* json, mrl_config** out) {
  return guard([&] {
    fail_if_null(out, "out");
    fail_if_null(json, "json");
    *out = nullptr;
    auto spec = mrlink::parse_run_spec(json);
    *out = new mrl_config{std::move(spec)};
  });
}

mrl_status mrl_config_clone(const mrl_config* config, mrl_config** out) {
  return guard([&] {
    fail_if_null(config, "config");
    fail_if_null(out, "out");
    *out = new mrl_config{config->spec};
  });
}

void mrl_config_destroy(mrl_config* config) { delete config; }

mrl_status mrl_config_to_json(const mrl_config* config, char* buffer, size_t capacity,
                              size_t* length) {
  return guard([&] {
    fail_if_null(config, "config");
    write_string(mrlink::dump_run_spec(config->spec), buffer, capacity, length);
  });
}

mrl_status mrl_config_set_number(mrl_config* config, const char* name, double value) {
  return guard([&] {
    fail_if_null(config, "config");
    fail_if_null(name, "name");
    mrlink::set_parameter(config->spec, name, value);
  });
}

mrl_status mrl_config_get_number(const mrl_config* config, const char* name, double* value) {
  return guard([&] {
    fail_if_null(config, "config");
    fail_if_null(name, "name");
    fail_if_null(value, "value");
    *value = mrlink::get_parameter(config->spec, name);
  });
}

mrl_status mrl_config_set_string(mrl_config* config, const char* name, const char* value) {
  return guard([&] {
    fail_if_null(config, "config");
    fail_if_null(name, "name");
    fail_if_null(value, "value");
    *string_field(config->spec, name) = value;
  });
}

mrl_status mrl_config_get_string(const mrl_config* config, const char* name, char* buffer,
                                 size_t capacity, size_t* length) {
  return guard([&] {
    fail_if_null(config, "config");
    fail_if_null(name, "name");
    auto spec = config->spec;
    write_string(*string_field(spec, name), buffer, capacity, length);
  });
}

mrl_status mrl_config_set_seed(mrl_config* config, uint64_t seed) {
  return guard([&] {
    fail_if_null(config, "config");
    config->spec.seed = seed;
  });
}

mrl_status mrl_config_get_seed(const mrl_config* config, uint64_t* seed) {
  return guard([&] {
    fail_if_null(config, "config");
    fail_if_null(seed, "seed");
    *seed = config->spec.seed;
  });
}

mrl_status mrl_config_get_list(const mrl_config* config, const char* name, double* values,
                               size_t capacity, size_t* count) {
  return guard([&] {
    fail_if_null(config, "config");
    fail_if_null(name, "name");
    const std::string n = name;
    if (n == "speeds") {
      write_array(config->spec.speeds, values, capacity, count);
    } else if (n == "relay_counts") {
      write_array(config->spec.relay_counts, values, capacity, count);
    } else if (n == "lambdas") {
      write_array(config->spec.lambdas, values, capacity, count);
    } else {
      throw mrlink::InvalidArgument("unknown list '" + n + "'");
    }
  });
}

mrl_status mrl_config_validate(const mrl_config* config, char* buffer, size_t capacity,
                               size_t* length, size_t* count) {
  return guard([&] {
    fail_if_null(config, "config");
    fail_if_null(count, "count");
    auto problems = mrlink::validate_run_spec(config->spec);
    *count = problems.size();
    std::string joined;
    for (const auto& p : problems) joined += p + "\n";
    write_string(joined, buffer, capacity, length);
  });
}

mrl_status mrl_config_sweep_grid(const mrl_config* config, double* values, size_t capacity,
                                 size_t* count) {
  return guard([&] {
    fail_if_null(config, "config");
    write_array(mrlink::sweep_grid(config->spec), values, capacity, count);
  });
}

mrl_status mrl_make_grid(const char* scale, double lo, double hi, int points, double* values,
                         size_t capacity, size_t* count) {
  return guard([&] {
    fail_if_null(scale, "scale");
    write_array(mrlink::make_grid(scale, lo, hi, points), values, capacity, count);
  });
}

mrl_status mrl_position_count(const mrl_config* config, int* count) {
  return guard([&] {
    fail_if_null(config, "config");
    fail_if_null(count, "count");
    *count = mrlink::make_link(config->spec).positions();
  });
}

mrl_status mrl_hop_distances(const mrl_config* config, int position, double* d_source,
                             double* d_relay) {
  return guard([&] {
    fail_if_null(config, "config");
    fail_if_null(d_source, "d_source");
    fail_if_null(d_relay, "d_relay");
    auto link = mrlink::make_link(config->spec);
    auto d = mrlink::hop_distances(link.geometry, position);
    *d_source = d.source;
    *d_relay = d.relay;
  });
}

mrl_status mrl_per(const mrl_config* config, int hop, double energy, double distance,
                   double* per) {
  return guard([&] {
    fail_if_null(config, "config");
    fail_if_null(per, "per");
    if (hop != 0 && hop != 1) throw mrlink::InvalidArgument("hop must be 0 or 1");
    auto link = mrlink::make_link(config->spec);
    const auto& model = hop == 0 ? link.per_source : link.per_relay;
    const auto& mcs = hop == 0 ? link.mcs_source : link.mcs_relay;
    *per = mrlink::per_general(model, energy, mcs, link.channel, distance);
  });
}

mrl_status mrl_walk_kernel(const mrl_config* config, double* matrix, size_t capacity,
                           size_t* count) {
  return guard([&] {
    fail_if_null(config, "config");
    auto link = mrlink::make_link(config->spec);
    auto p = mrlink::step_kernel(link.walk);
    std::vector<double> flat;
    flat.reserve(static_cast<size_t>(p.size()));
    for (Eigen::Index i = 0; i < p.rows(); ++i)
      for (Eigen::Index j = 0; j < p.cols(); ++j) flat.push_back(p(i, j));
    write_array(flat, matrix, capacity, count);
  });
}

mrl_status mrl_walk_stationary(const mrl_config* config, double* mass, size_t capacity,
                               size_t* count, int* uniform_fallback) {
  return guard([&] {
    fail_if_null(config, "config");
    auto link = mrlink::make_link(config->spec);
    auto ws = mrlink::walk_stationary(link.walk);
    write_array(ws.mass, mass, capacity, count);
    if (uniform_fallback != nullptr) *uniform_fallback = ws.uniform_fallback ? 1 : 0;
  });
}

mrl_status mrl_steady(const mrl_config* config, mrl_steady_metrics* metrics, double* pi,
                      size_t capacity, size_t* count) {
  return guard([&] {
    fail_if_null(config, "config");
    fail_if_null(metrics, "metrics");
    auto m = mrlink::steady_metrics(mrlink::make_link(config->spec));
    if (pi != nullptr) {
      write_array(m.pi, pi, capacity, count);
    } else if (count != nullptr) {
      *count = m.pi.size();
    }
    copy_steady(m, metrics);
  });
}

mrl_status mrl_stationary_position(const mrl_config* config, int position,
                                   mrl_steady_metrics* metrics) {
  return guard([&] {
    fail_if_null(config, "config");
    fail_if_null(metrics, "metrics");
    copy_steady(mrlink::stationary_relay_metrics(mrlink::make_link(config->spec), position),
                metrics);
  });
}

mrl_status mrl_random_stationary(const mrl_config* config, mrl_steady_metrics* metrics) {
  return guard([&] {
    fail_if_null(config, "config");
    fail_if_null(metrics, "metrics");
    copy_steady(mrlink::random_stationary_metrics(mrlink::make_link(config->spec)), metrics);
  });
}

mrl_status mrl_best_position(const mrl_config* config, int* position) {
  return guard([&] {
    fail_if_null(config, "config");
    fail_if_null(position, "position");
    *position = mrlink::best_stationary_position(mrlink::make_link(config->spec));
  });
}

mrl_status mrl_timeshare(const mrl_config* config, mrl_timeshare_metrics* metrics) {
  return guard([&] {
    fail_if_null(config, "config");
    fail_if_null(metrics, "metrics");
    auto m = mrlink::timeshare_steady(mrlink::make_timeshare(config->spec));
    *metrics = mrl_timeshare_metrics{m.q,         m.throughput, m.delay,     m.energy_total,
                                     m.energy_relay, m.low_first, m.low_total, m.high_first,
                                     m.high_total, m.tau_low,    m.tau_high,  m.q_hat};
  });
}

mrl_status mrl_sleep(const mrl_config* config, mrl_sleep_metrics* metrics) {
  return guard([&] {
    fail_if_null(config, "config");
    fail_if_null(metrics, "metrics");
    auto cfg = mrlink::make_sleep(config->spec);
    auto m = mrlink::sleep_steady(cfg);
    *metrics = mrl_sleep_metrics{cfg.p_sleep,          m.steady.throughput,
                                 m.steady.delay,       m.steady.energy_total,
                                 m.steady.energy_relay, m.sleep_mass};
  });
}

mrl_status mrl_delay_distribution(const mrl_config* config, int horizon, mrl_delay_start start,
                                  mrl_delay_dist** out) {
  return guard([&] {
    fail_if_null(config, "config");
    fail_if_null(out, "out");
    *out = nullptr;
    auto d = mrlink::delay_distribution(mrlink::make_link(config->spec), horizon, to_start(start));
    *out = new mrl_delay_dist{std::move(d)};
  });
}

void mrl_delay_dist_destroy(mrl_delay_dist* dist) { delete dist; }

mrl_status mrl_delay_dist_summary(const mrl_delay_dist* dist, mrl_delay_summary* summary) {
  return guard([&] {
    fail_if_null(dist, "dist");
    fail_if_null(summary, "summary");
    const auto& d = dist->dist;
    *summary = mrl_delay_summary{d.horizon, d.tail_mass, d.truncated_mean, d.mean_lower,
                                 d.mean_upper};
  });
}

mrl_status mrl_delay_dist_cdf(const mrl_delay_dist* dist, double* cdf, size_t capacity,
                              size_t* count) {
  return guard([&] {
    fail_if_null(dist, "dist");
    write_array(dist->dist.cdf, cdf, capacity, count);
  });
}

mrl_status mrl_delay_dist_quantile(const mrl_delay_dist* dist, double probability, int* slots) {
  return guard([&] {
    fail_if_null(dist, "dist");
    fail_if_null(slots, "slots");
    *slots = dist->dist.quantile(probability);
  });
}

mrl_status mrl_expected_delay(const mrl_config* config, mrl_delay_start start, double* delay) {
  return guard([&] {
    fail_if_null(config, "config");
    fail_if_null(delay, "delay");
    *delay = mrlink::expected_delay(mrlink::make_link(config->spec), to_start(start));
  });
}

mrl_status mrl_min_delay(const double* cdf, size_t n, int relays, double* out) {
  return guard([&] {
    fail_if_null(cdf, "cdf");
    fail_if_null(out, "out");
    auto r = mrlink::min_delay_probability({cdf, n}, relays);
    std::copy(r.begin(), r.end(), out);
  });
}

mrl_status mrl_poisson_min_delay(const double* cdf, size_t n, double lambda, double* out) {
  return guard([&] {
    fail_if_null(cdf, "cdf");
    fail_if_null(out, "out");
    auto r = mrlink::poisson_min_delay({cdf, n}, lambda);
    std::copy(r.begin(), r.end(), out);
  });
}

mrl_status mrl_simulate(const mrl_config* config, mrl_sim_result** out) {
  return guard([&] {
    fail_if_null(config, "config");
    fail_if_null(out, "out");
    *out = nullptr;
    auto outcome = mrlink::simulate(mrlink::make_sim(config->spec));
    *out = new mrl_sim_result{std::move(outcome)};
  });
}

void mrl_sim_destroy(mrl_sim_result* result) { delete result; }

mrl_status mrl_sim_get_summary(const mrl_sim_result* result, mrl_sim_summary* summary) {
  return guard([&] {
    fail_if_null(result, "result");
    fail_if_null(summary, "summary");
    const auto& o = result->outcome;
    *summary = mrl_sim_summary{o.seed,
                               o.measured_slots,
                               o.delivered,
                               o.delivered_low,
                               o.delivered_high,
                               o.throughput,
                               o.throughput_batch.standard_error,
                               o.energy_per_packet,
                               o.energy_batch.standard_error,
                               o.mean_delay,
                               o.delay_batch.standard_error,
                               o.high_fraction_batch.mean,
                               o.high_fraction_batch.standard_error,
                               o.source_energy,
                               o.relay_energy};
  });
}

const char* mrl_sim_rng_name(const mrl_sim_result* result) {
  return result == nullptr ? "" : result->outcome.rng.c_str();
}

mrl_status mrl_sim_delay_counts(const mrl_sim_result* result, uint64_t* counts, size_t capacity,
                                size_t* count) {
  return guard([&] {
    fail_if_null(result, "result");
    write_array(result->outcome.delay_counts, counts, capacity, count);
  });
}

mrl_status mrl_sim_delay_cdf(const mrl_sim_result* result, double* cdf, size_t capacity,
                             size_t* count) {
  return guard([&] {
    fail_if_null(result, "result");
    write_array(mrlink::delay_histogram(result->outcome).cdf, cdf, capacity, count);
  });
}

}  // extern "C"
