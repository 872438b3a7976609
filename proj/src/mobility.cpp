#include "mrlink/mobility.hpp"

#include <cmath>
#include <string>

#include "mrlink/error.hpp"
#include "mrlink/stationary.hpp"

namespace mrlink {
namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument(std::string(what) + " must be in [0,1], got " + std::to_string(p));
  }
}

void check_steps(int steps) {
  if (steps < 0) throw InvalidArgument("walk steps per slot must be >= 0");
}

struct GeometryValidator {
  void operator()(const Geometry1D& g) const {
    if (!(g.distance > 0.0)) throw InvalidArgument("distance must be > 0");
    if (g.positions < 1) throw InvalidArgument("positions must be >= 1");
  }
  void operator()(const Geometry2D& g) const {
    if (g.nx < 1 || g.ny < 1) throw InvalidArgument("grid must be non-empty");
    if (!(g.scale > 0.0)) throw InvalidArgument("grid scale must be > 0");
    auto inside = [&](GridPoint p) { return p.x >= 1 && p.x <= g.nx && p.y >= 1 && p.y <= g.ny; };
    if (!inside(g.source)) throw InvalidArgument("source coordinates outside grid");
    if (!inside(g.destination)) throw InvalidArgument("destination coordinates outside grid");
  }
};

}  // namespace

int position_count(const Geometry& geometry) {
  if (const auto* g = std::get_if<Geometry1D>(&geometry)) return g->positions;
  const auto& g2 = std::get<Geometry2D>(geometry);
  return g2.nx * g2.ny;
}

void validate(const Geometry& geometry) { std::visit(GeometryValidator{}, geometry); }

GridPoint grid_coordinates(const Geometry2D& geometry, int position) {
  if (position < 1 || position > geometry.nx * geometry.ny) {
    throw InvalidArgument("position " + std::to_string(position) + " out of range");
  }
  return {(position - 1) % geometry.nx + 1, (position + geometry.nx - 1) / geometry.nx};
}

HopDistances hop_distances(const Geometry& geometry, int position) {
  validate(geometry);
  if (const auto* g = std::get_if<Geometry1D>(&geometry)) {
    if (position < 1 || position > g->positions) {
      throw InvalidArgument("position " + std::to_string(position) + " out of range");
    }
    const double ds = position * g->distance / (g->positions + 1);
    return {ds, g->distance - ds};
  }
  const auto& g2 = std::get<Geometry2D>(geometry);
  const GridPoint r = grid_coordinates(g2, position);
  auto dist = [&](GridPoint p) {
    return g2.scale * std::hypot(double(r.x - p.x), double(r.y - p.y));
  };
  return {dist(g2.source), dist(g2.destination)};
}

WalkKernel build_walk_1d(const Geometry1D& geometry, double p_move, int steps) {
  validate(Geometry{geometry});
  check_probability(p_move, "p_move");
  check_steps(steps);

  const int n = geometry.positions;
  Matrix p = Matrix::Zero(n, n);
  if (n == 1) {
    p(0, 0) = 1.0;
  } else {
    for (int i = 0; i < n; ++i) {
      p(i, i) = 1.0 - p_move;
      if (i == 0) {
        p(0, 1) = p_move;
      } else if (i == n - 1) {
        p(i, i - 1) = p_move;
      } else {
        p(i, i - 1) = p_move / 2.0;
        p(i, i + 1) = p_move / 2.0;
      }
    }
  }
  return {std::move(p), p_move, steps};
}

WalkKernel build_walk_2d(const Geometry2D& geometry, double p_move, int steps) {
  validate(Geometry{geometry});
  check_probability(p_move, "p_move");
  check_steps(steps);

  const int n = geometry.nx * geometry.ny;
  Matrix p = Matrix::Zero(n, n);
  for (int i = 1; i <= n; ++i) {
    const GridPoint c = grid_coordinates(geometry, i);
    std::vector<int> neighbours;
    if (c.x > 1) neighbours.push_back(i - 1);
    if (c.x < geometry.nx) neighbours.push_back(i + 1);
    if (c.y > 1) neighbours.push_back(i - geometry.nx);
    if (c.y < geometry.ny) neighbours.push_back(i + geometry.nx);

    if (neighbours.empty()) {
      p(i - 1, i - 1) = 1.0;
      continue;
    }
    p(i - 1, i - 1) = 1.0 - p_move;
    const double share = p_move / static_cast<double>(neighbours.size());
    for (int j : neighbours) p(i - 1, j - 1) = share;
  }
  return {std::move(p), p_move, steps};
}

WalkKernel build_walk(const Geometry& geometry, double p_move, int steps) {
  if (const auto* g = std::get_if<Geometry1D>(&geometry)) return build_walk_1d(*g, p_move, steps);
  return build_walk_2d(std::get<Geometry2D>(geometry), p_move, steps);
}

Matrix matrix_power(const Matrix& base, unsigned power) {
  if (base.rows() != base.cols()) throw InvalidArgument("matrix_power needs a square matrix");
  Matrix result = Matrix::Identity(base.rows(), base.cols());
  Matrix square = base;
  while (power > 0) {
    if (power & 1u) result = result * square;
    power >>= 1u;
    if (power > 0) square = square * square;
  }
  return result;
}

Matrix step_kernel(const WalkKernel& walk) {
  check_steps(walk.steps);
  return matrix_power(walk.one_step, static_cast<unsigned>(walk.steps));
}

WalkStationary walk_stationary(const WalkKernel& walk) {
  const int n = walk.size();
  if (n == 0) throw InvalidArgument("empty walk kernel");
  if (walk.p_move == 0.0 || n == 1) {
    return {std::vector<double>(n, 1.0 / n), walk.p_move == 0.0 && n > 1};
  }
  StationaryResult r = stationary_distribution(walk.one_step);
  return {std::move(r.pi), false};
}

}  // namespace mrlink
