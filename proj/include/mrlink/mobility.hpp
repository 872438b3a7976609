#pragma once

#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace mrlink {

using Matrix = Eigen::MatrixXd;

// Relay positions on the segment between source and destination.
// Position i in 1..positions sits at distance i*distance/(positions+1) from S.
struct Geometry1D {
  double distance = 300.0;
  int positions = 10;
};

struct GridPoint {
  int x = 1;
  int y = 1;
};

// nx columns by ny rows; position i maps to x = ((i-1) mod nx) + 1,
// y = ceil(i / nx). Node coordinates are in grid units, scale in meters.
struct Geometry2D {
  int nx = 1;
  int ny = 1;
  double scale = 1.0;
  GridPoint source{};
  GridPoint destination{};
};

using Geometry = std::variant<Geometry1D, Geometry2D>;

int position_count(const Geometry& geometry);
void validate(const Geometry& geometry);

GridPoint grid_coordinates(const Geometry2D& geometry, int position);

// Source->relay and relay->destination distances in meters.
struct HopDistances {
  double source = 0.0;
  double relay = 0.0;
};

HopDistances hop_distances(const Geometry& geometry, int position);

// One-step kernel plus the number of walk steps taken per slot.
struct WalkKernel {
  Matrix one_step;
  double p_move = 0.0;
  int steps = 1;

  int size() const { return static_cast<int>(one_step.rows()); }
};

// Bounded symmetric walk: stay with 1-p_move, interior positions split p_move
// over both neighbours, the two end positions give it all to their one
// neighbour.
WalkKernel build_walk_1d(const Geometry1D& geometry, double p_move, int steps = 1);

// 4-neighbourhood walk on the grid; p_move is split evenly over the cell's
// neighbours (4 interior, 3 edge, 2 corner).
WalkKernel build_walk_2d(const Geometry2D& geometry, double p_move, int steps = 1);

WalkKernel build_walk(const Geometry& geometry, double p_move, int steps = 1);

// Square-and-multiply; power 0 is the identity.
Matrix matrix_power(const Matrix& base, unsigned power);

// P^s for the kernel's s.
Matrix step_kernel(const WalkKernel& walk);

struct WalkStationary {
  std::vector<double> mass;
  // p_move == 0: the walk is reducible and the uniform law is returned.
  bool uniform_fallback = false;
};

WalkStationary walk_stationary(const WalkKernel& walk);

}  // namespace mrlink
