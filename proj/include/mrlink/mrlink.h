/*
 * C interface to the mobile-relay link library.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_destroy function. Every call returns an mrl_status; on failure
 * mrl_last_error() holds a message for the calling thread.
 *
 * Variable-length outputs use (buffer, capacity, length/count): the required
 * size is always written to *length (*count), and MRL_ERR_BUFFER_TOO_SMALL is
 * returned without touching the buffer when capacity is insufficient. For
 * strings the required size counts the terminating NUL. Relay positions are
 * 1-based.
 */
#ifndef MRLINK_H
#define MRLINK_H

#include <stddef.h>
#include <stdint.h>

#if defined(MRL_BUILDING_LIBRARY)
#define MRL_API __attribute__((visibility("default")))
#else
#define MRL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mrl_status {
  MRL_OK = 0,
  MRL_ERR_INVALID_ARGUMENT = 1,
  MRL_ERR_CONFIG = 2,
  MRL_ERR_NUMERICAL = 3,
  MRL_ERR_BUFFER_TOO_SMALL = 4,
  MRL_ERR_INTERNAL = 5,
  MRL_ERR_NO_DELIVERY = 6 /* valid chain whose throughput is zero */
} mrl_status;

typedef enum mrl_delay_start {
  MRL_DELAY_START_PACKET = 0, /* relay position law at packet start */
  MRL_DELAY_START_WALK = 1    /* walk stationary law */
} mrl_delay_start;

typedef struct mrl_config mrl_config;
typedef struct mrl_delay_dist mrl_delay_dist;
typedef struct mrl_sim_result mrl_sim_result;

typedef struct mrl_steady_metrics {
  double throughput;   /* packets per slot */
  double delay;        /* slots per packet */
  double energy_total; /* source joules per delivered packet */
  double energy_relay; /* relay joules per delivered packet */
} mrl_steady_metrics;

typedef struct mrl_timeshare_metrics {
  double q;
  double throughput;
  double delay;
  double energy_total;
  double energy_relay;
  double low_first;
  double low_total;
  double high_first;
  double high_total;
  double tau_low;  /* NaN when the low level is never used */
  double tau_high; /* NaN when the high level is never used */
  double q_hat;
} mrl_timeshare_metrics;

typedef struct mrl_sleep_metrics {
  double p_sleep;
  double throughput;
  double delay;
  double energy_total;
  double energy_relay;
  double sleep_mass;
} mrl_sleep_metrics;

typedef struct mrl_delay_summary {
  int horizon;
  double tail_mass;
  double truncated_mean;
  double mean_lower;
  double mean_upper;
} mrl_delay_summary;

typedef struct mrl_sim_summary {
  uint64_t seed;
  uint64_t measured_slots;
  uint64_t delivered;
  uint64_t delivered_low;
  uint64_t delivered_high;
  double throughput;
  double throughput_se;
  double energy_per_packet;
  double energy_se;
  double mean_delay;
  double delay_se;
  double high_fraction;
  double high_fraction_se;
  double source_energy;
  double relay_energy;
} mrl_sim_summary;

MRL_API const char* mrl_version(void);
MRL_API const char* mrl_last_error(void);
MRL_API const char* mrl_status_string(mrl_status status);

/* Configuration */
MRL_API mrl_status mrl_config_create(mrl_config** out);
MRL_API mrl_status mrl_config_from_json(const char* json, mrl_config** out);
MRL_API mrl_status mrl_config_clone(const mrl_config* config, mrl_config** out);
MRL_API void mrl_config_destroy(mrl_config* config);
MRL_API mrl_status mrl_config_to_json(const mrl_config* config, char* buffer, size_t capacity,
                                      size_t* length);
MRL_API mrl_status mrl_config_set_number(mrl_config* config, const char* name, double value);
MRL_API mrl_status mrl_config_get_number(const mrl_config* config, const char* name,
                                         double* value);
MRL_API mrl_status mrl_config_set_string(mrl_config* config, const char* name, const char* value);
MRL_API mrl_status mrl_config_get_string(const mrl_config* config, const char* name, char* buffer,
                                         size_t capacity, size_t* length);
MRL_API mrl_status mrl_config_set_seed(mrl_config* config, uint64_t seed);
MRL_API mrl_status mrl_config_get_seed(const mrl_config* config, uint64_t* seed);
/* "speeds", "relay_counts" or "lambdas" */
MRL_API mrl_status mrl_config_get_list(const mrl_config* config, const char* name, double* values,
                                       size_t capacity, size_t* count);
/* Newline-separated "key: message" diagnostics; *count is the number of lines. */
MRL_API mrl_status mrl_config_validate(const mrl_config* config, char* buffer, size_t capacity,
                                       size_t* length, size_t* count);
MRL_API mrl_status mrl_config_sweep_grid(const mrl_config* config, double* values,
                                         size_t capacity, size_t* count);
MRL_API mrl_status mrl_make_grid(const char* scale, double lo, double hi, int points,
                                 double* values, size_t capacity, size_t* count);

/* Mobility and PHY */
MRL_API mrl_status mrl_position_count(const mrl_config* config, int* count);
MRL_API mrl_status mrl_hop_distances(const mrl_config* config, int position, double* d_source,
                                     double* d_relay);
/* hop 0: source->relay model, hop 1: relay->destination model */
MRL_API mrl_status mrl_per(const mrl_config* config, int hop, double energy, double distance,
                           double* per);
/* Row-major P^s, count = N*N. */
MRL_API mrl_status mrl_walk_kernel(const mrl_config* config, double* matrix, size_t capacity,
                                   size_t* count);
MRL_API mrl_status mrl_walk_stationary(const mrl_config* config, double* mass, size_t capacity,
                                       size_t* count, int* uniform_fallback);

/* Link chain */
/* pi may be NULL (then only *count is set, if count is not NULL); otherwise it
   receives the 3N stationary vector (F, R, B blocks). */
MRL_API mrl_status mrl_steady(const mrl_config* config, mrl_steady_metrics* metrics, double* pi,
                              size_t capacity, size_t* count);
MRL_API mrl_status mrl_stationary_position(const mrl_config* config, int position,
                                           mrl_steady_metrics* metrics);
MRL_API mrl_status mrl_random_stationary(const mrl_config* config, mrl_steady_metrics* metrics);
MRL_API mrl_status mrl_best_position(const mrl_config* config, int* position);

/* Protocols (q and p_sleep are read from the config) */
MRL_API mrl_status mrl_timeshare(const mrl_config* config, mrl_timeshare_metrics* metrics);
MRL_API mrl_status mrl_sleep(const mrl_config* config, mrl_sleep_metrics* metrics);

/* Multi-relay delay analysis */
MRL_API mrl_status mrl_delay_distribution(const mrl_config* config, int horizon,
                                          mrl_delay_start start, mrl_delay_dist** out);
MRL_API void mrl_delay_dist_destroy(mrl_delay_dist* dist);
MRL_API mrl_status mrl_delay_dist_summary(const mrl_delay_dist* dist, mrl_delay_summary* summary);
/* cdf[t] = Pr(eta <= t), count = horizon + 1 */
MRL_API mrl_status mrl_delay_dist_cdf(const mrl_delay_dist* dist, double* cdf, size_t capacity,
                                      size_t* count);
MRL_API mrl_status mrl_delay_dist_quantile(const mrl_delay_dist* dist, double probability,
                                           int* slots);
MRL_API mrl_status mrl_expected_delay(const mrl_config* config, mrl_delay_start start,
                                      double* delay);
/* out has n entries */
MRL_API mrl_status mrl_min_delay(const double* cdf, size_t n, int relays, double* out);
MRL_API mrl_status mrl_poisson_min_delay(const double* cdf, size_t n, double lambda, double* out);

/* Monte Carlo */
MRL_API mrl_status mrl_simulate(const mrl_config* config, mrl_sim_result** out);
MRL_API void mrl_sim_destroy(mrl_sim_result* result);
MRL_API mrl_status mrl_sim_get_summary(const mrl_sim_result* result, mrl_sim_summary* summary);
MRL_API const char* mrl_sim_rng_name(const mrl_sim_result* result);
MRL_API mrl_status mrl_sim_delay_counts(const mrl_sim_result* result, uint64_t* counts,
                                        size_t capacity, size_t* count);
MRL_API mrl_status mrl_sim_delay_cdf(const mrl_sim_result* result, double* cdf, size_t capacity,
                                     size_t* count);

#ifdef __cplusplus
}
#endif

#endif /* MRLINK_H */
