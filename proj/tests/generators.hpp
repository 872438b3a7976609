#pragma once

#include <cmath>
#include <cstdint>

#include "mrlink/chain.hpp"

namespace gen {

// splitmix64; enough for drawing test cases, and independent of the
// generator the simulator uses.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  int integer(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin() { return (next() & 1) != 0; }

 private:
  std::uint64_t state_;
};

inline mrlink::Geometry geometry(Rng& r) {
  if (r.coin()) return mrlink::Geometry1D{r.uniform(50.0, 600.0), r.integer(1, 12)};
  mrlink::Geometry2D g;
  g.nx = r.integer(1, 5);
  g.ny = r.integer(1, 5);
  g.scale = r.uniform(5.0, 60.0);
  g.source = {r.integer(1, g.nx), r.integer(1, g.ny)};
  g.destination = {r.integer(1, g.nx), r.integer(1, g.ny)};
  return g;
}

// Random link with energies spread over the whole admissible range.
inline mrlink::LinkConfig link(Rng& r) {
  mrlink::LinkConfig c;
  c.geometry = geometry(r);
  c.walk = mrlink::build_walk(c.geometry, r.uniform(0.05, 1.0), r.integer(1, 4));
  c.channel.path_loss_exponent = r.uniform(2.0, 4.0);
  c.channel.noise_density = r.log_uniform(1e-15, 1e-12);
  c.energy_source = r.log_uniform(1e-7, 2e-4);
  c.energy_relay = r.log_uniform(1e-7, 2e-4);
  return c;
}

// Random link whose hops use constant PERs drawn away from 0 and 1.
inline mrlink::LinkConfig fixed_per_link(Rng& r) {
  auto c = link(r);
  c.per_source = {mrlink::PerModelKind::Fixed, r.uniform(0.05, 0.9)};
  c.per_relay = {mrlink::PerModelKind::Fixed, r.uniform(0.05, 0.9)};
  return c;
}

}  // namespace gen
