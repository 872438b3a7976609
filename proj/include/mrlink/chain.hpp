#pragma once

#include <span>
#include <vector>

#include "mrlink/mobility.hpp"
#include "mrlink/phy.hpp"

namespace mrlink {

// Per-slot system state: S sending a new packet (First), S retransmitting
// because R has not decoded (Retransmit), S and R both sending (Both).
// Sleep is only used by the sleep-mode chain.
enum class StateKind : int { First = 0, Retransmit = 1, Both = 2, Sleep = 3 };

struct LinkConfig {
  Geometry geometry = Geometry1D{};
  WalkKernel walk;
  McsParams mcs_source;
  McsParams mcs_relay;
  ChannelParams channel;
  PerModel per_source;
  PerModel per_relay;
  double energy_source = 1.8e-5;
  double energy_relay = 1.8e-5;

  int positions() const { return walk.size(); }
};

// Reference defaults: d = 300 m, N = 10, p_move = 0.98, s = 1, E_S = E_R = energy.
LinkConfig default_link(double energy = 1.8e-5, int steps = 1);

void validate(const LinkConfig& config);

// PER of each hop evaluated at every relay position (index position-1).
struct HopErrorRates {
  std::vector<double> source;
  std::vector<double> relay;
};

HopErrorRates hop_error_rates(const LinkConfig& config, double energy_source,
                              double energy_relay);

// Dense transition matrix over blocks of `positions` states. Flat index is
// block * positions + (position - 1); for the plain link chain the blocks are
// First, Retransmit, Both in that order.
struct ChainMatrix {
  Matrix matrix;
  int blocks = 0;
  int positions = 0;

  ChainMatrix() = default;
  ChainMatrix(int blocks, int positions);

  int size() const { return blocks * positions; }
  int index(int block, int position) const;
  int index(StateKind kind, int position) const {
    return index(static_cast<int>(kind), position);
  }
  // Sum of pi over one block.
  double block_mass(std::span<const double> pi, int block) const;
  // Copy of the (from, to) block.
  Matrix block(int from, int to) const;
};

// Builds the chain from the walk's s-step kernel and per-position PERs.
// This is the whole model; build_chain(LinkConfig) only evaluates the PERs.
ChainMatrix build_chain(const Matrix& walk_power, std::span<const double> per_source,
                        std::span<const double> per_relay);

ChainMatrix build_chain(const LinkConfig& config);

std::vector<double> solve_stationary(const ChainMatrix& chain);

struct SteadyMetrics {
  std::vector<double> pi;
  double throughput = 0.0;     // packets per slot, mass on First states
  double delay = 0.0;          // slots per packet, 1 / throughput
  double energy_total = 0.0;   // source transmit energy per delivered packet
  double energy_relay = 0.0;   // relay transmit energy per delivered packet
};

// Throws NumericalError when the First states carry no mass.
SteadyMetrics metrics(const LinkConfig& config, std::span<const double> pi);

// build_chain + solve_stationary + metrics.
SteadyMetrics steady_metrics(const LinkConfig& config);

// Relay frozen at `position` for the whole run: a 3-state chain.
SteadyMetrics stationary_relay_metrics(const LinkConfig& config, int position);

// Relay frozen at a position drawn from the mobile walk's stationary law mu.
// energy_total and energy_relay are mu-weighted means over positions; delay is
// the mu-weighted mean delay and throughput = 1 / delay. pi is the mu-weighted
// mixture of the per-position 3-state laws laid out like the 3N chain, so
// throughput here is not sum(pi_F). If some position with positive weight
// never delivers, delay and energies are +inf and throughput is 0.
SteadyMetrics random_stationary_metrics(const LinkConfig& config);

// Position minimizing stationary-relay energy_total (lowest index on ties).
int best_stationary_position(const LinkConfig& config);

}  // namespace mrlink
