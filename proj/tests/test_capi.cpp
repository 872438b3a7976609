#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "mrlink/mrlink.h"

namespace {

struct Config {
  mrl_config* ptr = nullptr;
  Config() { REQUIRE(mrl_config_create(&ptr) == MRL_OK); }
  explicit Config(const char* json) { REQUIRE(mrl_config_from_json(json, &ptr) == MRL_OK); }
  ~Config() { mrl_config_destroy(ptr); }
  Config(const Config&) = delete;
  Config& operator=(const Config&) = delete;
};

std::string last_error() { return mrl_last_error(); }

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::strlen(mrl_version()) > 0);
  CHECK(std::string(mrl_status_string(MRL_OK)) != std::string(mrl_status_string(MRL_ERR_CONFIG)));
  CHECK(std::strlen(mrl_status_string(static_cast<mrl_status>(42))) > 0);
}

TEST_CASE("default steady metrics and the stationary vector") {
  Config c;
  mrl_steady_metrics m{};
  size_t count = 0;
  CHECK(mrl_steady(c.ptr, &m, nullptr, 0, &count) == MRL_OK);
  CHECK(m.energy_total * m.throughput == doctest::Approx(1.8e-5 * 1080).epsilon(1e-12));
  CHECK(m.delay == doctest::Approx(1.0 / m.throughput).epsilon(1e-14));

  std::vector<double> pi(10);
  CHECK(mrl_steady(c.ptr, &m, pi.data(), pi.size(), &count) == MRL_ERR_BUFFER_TOO_SMALL);
  CHECK(count == 30);
  pi.resize(count);
  CHECK(mrl_steady(c.ptr, &m, pi.data(), pi.size(), &count) == MRL_OK);
  double f = 0;
  for (int i = 0; i < 10; ++i) f += pi[i];
  CHECK(f == doctest::Approx(m.throughput).epsilon(1e-12));
}

TEST_CASE("string buffer protocol") {
  Config c;
  size_t length = 0;
  CHECK(mrl_config_to_json(c.ptr, nullptr, 0, &length) == MRL_ERR_BUFFER_TOO_SMALL);
  CHECK(length > 10);
  std::string buf(length, '\0');
  CHECK(mrl_config_to_json(c.ptr, buf.data(), buf.size(), &length) == MRL_OK);
  CHECK(std::strlen(buf.c_str()) + 1 == length);

  mrl_config* back = nullptr;
  CHECK(mrl_config_from_json(buf.c_str(), &back) == MRL_OK);
  double v = 0;
  CHECK(mrl_config_get_number(back, "noise_density", &v) == MRL_OK);
  CHECK(v == 1e-13);
  mrl_config_destroy(back);

  char small[4];
  CHECK(mrl_config_get_string(c.ptr, "per_model", small, sizeof small, &length) ==
        MRL_ERR_BUFFER_TOO_SMALL);
  CHECK(length == std::strlen("rayleigh-uncoded") + 1);
  char name[64];
  CHECK(mrl_config_get_string(c.ptr, "per_model", name, sizeof name, &length) == MRL_OK);
  CHECK(std::string(name) == "rayleigh-uncoded");
}

TEST_CASE("setters, getters and error codes") {
  Config c;
  CHECK(mrl_config_set_number(c.ptr, "q", 0.3) == MRL_OK);
  double v = 0;
  CHECK(mrl_config_get_number(c.ptr, "q", &v) == MRL_OK);
  CHECK(v == 0.3);
  CHECK(mrl_config_set_number(c.ptr, "warp", 1.0) == MRL_ERR_INVALID_ARGUMENT);
  CHECK(last_error().find("warp") != std::string::npos);
  CHECK(mrl_config_set_string(c.ptr, "geometry", "2d") == MRL_OK);
  CHECK(mrl_config_set_string(c.ptr, "color", "red") == MRL_ERR_INVALID_ARGUMENT);
  CHECK(mrl_config_set_seed(c.ptr, 0xffffffffffffffffULL) == MRL_OK);
  uint64_t seed = 0;
  CHECK(mrl_config_get_seed(c.ptr, &seed) == MRL_OK);
  CHECK(seed == 0xffffffffffffffffULL);
  CHECK(mrl_config_get_number(c.ptr, "q", nullptr) == MRL_ERR_INVALID_ARGUMENT);
  CHECK(mrl_config_get_number(nullptr, "q", &v) == MRL_ERR_INVALID_ARGUMENT);

  mrl_config* bad = nullptr;
  CHECK(mrl_config_from_json("{\"alpha\": 3}", &bad) == MRL_ERR_CONFIG);
  CHECK(bad == nullptr);
  CHECK(mrl_config_from_json("{", &bad) == MRL_ERR_CONFIG);
  CHECK(last_error().find("JSON") != std::string::npos);

  double list[8];
  size_t count = 0;
  CHECK(mrl_config_get_list(c.ptr, "lambdas", list, 8, &count) == MRL_OK);
  CHECK(count == 4);
  CHECK(list[3] == 4.0);
  CHECK(mrl_config_get_list(c.ptr, "speeds", list, 2, &count) == MRL_ERR_BUFFER_TOO_SMALL);
  CHECK(count == 4);
}

TEST_CASE("validate reports every problem") {
  Config c;
  size_t length = 0, count = 0;
  char buf[512];
  CHECK(mrl_config_validate(c.ptr, buf, sizeof buf, &length, &count) == MRL_OK);
  CHECK(count == 0);
  mrl_config_set_number(c.ptr, "q", 2.0);
  mrl_config_set_number(c.ptr, "p_sleep", 1.0);
  CHECK(mrl_config_validate(c.ptr, buf, sizeof buf, &length, &count) == MRL_OK);
  CHECK(count == 2);
  CHECK(std::string(buf).find("q: q out of [0,1]") != std::string::npos);
  mrl_timeshare_metrics tm{};
  CHECK(mrl_timeshare(c.ptr, &tm) == MRL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("walk and phy through the C API") {
  Config c;
  int n = 0;
  CHECK(mrl_position_count(c.ptr, &n) == MRL_OK);
  CHECK(n == 10);
  std::vector<double> mass(10);
  size_t count = 0;
  int fallback = -1;
  CHECK(mrl_walk_stationary(c.ptr, mass.data(), mass.size(), &count, &fallback) == MRL_OK);
  CHECK(fallback == 0);
  CHECK(mass[0] == doctest::Approx(1.0 / 18).epsilon(1e-12));
  CHECK(mass[4] == doctest::Approx(1.0 / 9).epsilon(1e-12));
  std::vector<double> kernel(100);
  CHECK(mrl_walk_kernel(c.ptr, kernel.data(), kernel.size(), &count) == MRL_OK);
  CHECK(kernel[0 * 10 + 1] == doctest::Approx(0.98));

  double ds = 0, dr = 0;
  CHECK(mrl_hop_distances(c.ptr, 5, &ds, &dr) == MRL_OK);
  CHECK(ds + dr == doctest::Approx(300.0));
  CHECK(mrl_hop_distances(c.ptr, 11, &ds, &dr) == MRL_ERR_INVALID_ARGUMENT);
  double per = 0;
  CHECK(mrl_per(c.ptr, 0, 1.8e-5, ds, &per) == MRL_OK);
  CHECK(per > 0.0);
  CHECK(per < 1.0);
  CHECK(mrl_per(c.ptr, 2, 1.8e-5, ds, &per) == MRL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("zero throughput maps to its own status") {
  Config c(R"({"per_model": "fixed", "per_fixed_source": 1.0})");
  mrl_steady_metrics m{};
  size_t count = 0;
  CHECK(mrl_steady(c.ptr, &m, nullptr, 0, &count) == MRL_ERR_NO_DELIVERY);
  mrl_delay_dist* d = nullptr;
  CHECK(mrl_delay_distribution(c.ptr, 50, MRL_DELAY_START_PACKET, &d) == MRL_ERR_NO_DELIVERY);
  CHECK(d == nullptr);
}

TEST_CASE("stationary relays and protocols") {
  Config c;
  int best = 0;
  CHECK(mrl_best_position(c.ptr, &best) == MRL_OK);
  CHECK((best == 5 || best == 6));
  mrl_steady_metrics a{}, b{};
  CHECK(mrl_stationary_position(c.ptr, 3, &a) == MRL_OK);
  CHECK(mrl_stationary_position(c.ptr, 8, &b) == MRL_OK);
  CHECK(a.energy_total == doctest::Approx(b.energy_total).epsilon(1e-10));
  CHECK(mrl_random_stationary(c.ptr, &a) == MRL_OK);

  mrl_config_set_number(c.ptr, "q", 0.4);
  mrl_timeshare_metrics tm{};
  CHECK(mrl_timeshare(c.ptr, &tm) == MRL_OK);
  CHECK(tm.q_hat == doctest::Approx(0.4).epsilon(1e-10));
  mrl_config_set_number(c.ptr, "p_sleep", 0.5);
  mrl_sleep_metrics sm{};
  CHECK(mrl_sleep(c.ptr, &sm) == MRL_OK);
  CHECK(sm.sleep_mass > 0.0);
}

TEST_CASE("delay distribution handle") {
  Config c(R"({"per_model": "fixed", "per_fixed_source": 0.5, "per_fixed_relay": 0.5,
              "positions": 1})");
  mrl_delay_dist* d = nullptr;
  REQUIRE(mrl_delay_distribution(c.ptr, 100, MRL_DELAY_START_PACKET, &d) == MRL_OK);
  mrl_delay_summary s{};
  CHECK(mrl_delay_dist_summary(d, &s) == MRL_OK);
  CHECK(s.horizon == 100);
  CHECK(s.mean_lower <= 4.0 + 1e-12);
  CHECK(s.mean_upper >= 4.0 - 1e-12);
  std::vector<double> cdf(101);
  size_t count = 0;
  CHECK(mrl_delay_dist_cdf(d, cdf.data(), cdf.size(), &count) == MRL_OK);
  CHECK(count == 101);
  CHECK(cdf[2] == doctest::Approx(0.25));
  int slots = 0;
  CHECK(mrl_delay_dist_quantile(d, 0.25, &slots) == MRL_OK);
  CHECK(slots == 2);
  CHECK(mrl_delay_dist_quantile(d, 2.0, &slots) == MRL_ERR_INVALID_ARGUMENT);
  mrl_delay_dist_destroy(d);

  std::vector<double> out(count);
  CHECK(mrl_min_delay(cdf.data(), count, 2, out.data()) == MRL_OK);
  CHECK(out[2] == doctest::Approx(1 - 0.75 * 0.75));
  CHECK(mrl_poisson_min_delay(cdf.data(), count, 1.0, out.data()) == MRL_OK);
  CHECK(out[2] == doctest::Approx(1 - std::exp(-0.25)));
  CHECK(mrl_min_delay(cdf.data(), count, 0, out.data()) == MRL_ERR_INVALID_ARGUMENT);

  double mean = 0;
  CHECK(mrl_expected_delay(c.ptr, MRL_DELAY_START_PACKET, &mean) == MRL_OK);
  CHECK(mean == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("simulation handle") {
  Config c(R"({"sim_slots": 20000, "sim_warmup": 100, "sim_batches": 20, "seed": 5})");
  mrl_sim_result* r = nullptr;
  REQUIRE(mrl_simulate(c.ptr, &r) == MRL_OK);
  mrl_sim_summary s{};
  CHECK(mrl_sim_get_summary(r, &s) == MRL_OK);
  CHECK(s.seed == 5);
  CHECK(s.measured_slots == 19900);
  CHECK(s.delivered > 0);
  CHECK(s.energy_per_packet * static_cast<double>(s.delivered) ==
        doctest::Approx(s.source_energy).epsilon(1e-15));
  CHECK(std::string(mrl_sim_rng_name(r)) == "mt19937_64");

  size_t count = 0;
  CHECK(mrl_sim_delay_counts(r, nullptr, 0, &count) == MRL_ERR_BUFFER_TOO_SMALL);
  std::vector<uint64_t> counts(count);
  CHECK(mrl_sim_delay_counts(r, counts.data(), counts.size(), &count) == MRL_OK);
  uint64_t total = 0;
  for (auto k : counts) total += k;
  CHECK(total == s.delivered);
  std::vector<double> cdf(count);
  CHECK(mrl_sim_delay_cdf(r, cdf.data(), cdf.size(), &count) == MRL_OK);
  CHECK(cdf.back() == doctest::Approx(1.0));
  mrl_sim_destroy(r);

  mrl_config_set_number(c.ptr, "sim_batches", 0);
  r = nullptr;
  CHECK(mrl_simulate(c.ptr, &r) == MRL_ERR_INVALID_ARGUMENT);
  CHECK(r == nullptr);
  mrl_sim_destroy(nullptr);
  mrl_config_destroy(nullptr);
  mrl_delay_dist_destroy(nullptr);
}

TEST_CASE("grids") {
  double g[5];
  size_t count = 0;
  CHECK(mrl_make_grid("linear", 0.0, 1.0, 5, g, 5, &count) == MRL_OK);
  CHECK(g[2] == 0.5);
  CHECK(mrl_make_grid("log", 0.0, 1.0, 5, g, 5, &count) == MRL_ERR_INVALID_ARGUMENT);
  Config c(R"({"sweep_parameter": "q", "sweep_scale": "linear", "sweep_min": 0,
              "sweep_max": 1, "sweep_points": 3})");
  CHECK(mrl_config_sweep_grid(c.ptr, g, 5, &count) == MRL_OK);
  CHECK(count == 3);
  Config plain;
  CHECK(mrl_config_sweep_grid(plain.ptr, g, 5, &count) == MRL_OK);
  CHECK(count == 0);
}
