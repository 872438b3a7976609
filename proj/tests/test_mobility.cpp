#include <cmath>
#include <numeric>

#include "doctest.h"
#include "generators.hpp"
#include "mrlink/error.hpp"
#include "mrlink/mobility.hpp"

using namespace mrlink;

namespace {

double max_row_sum_error(const Matrix& p) {
  return (p.rowwise().sum().array() - 1.0).abs().maxCoeff();
}

// Detailed balance for a walk that leaves position i for each neighbour with
// p_move / deg(i): mu_i proportional to deg(i). The 1D kernel gives boundary
// cells the whole p_move towards one neighbour, i.e. half the weight of an
// interior cell.
std::vector<double> balance_oracle_1d(int n) {
  if (n == 1) return {1.0};
  std::vector<double> w(n, 2.0);
  w.front() = w.back() = 1.0;
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= total;
  return w;
}

std::vector<double> balance_oracle_2d(const Geometry2D& g) {
  std::vector<double> w;
  for (int y = 1; y <= g.ny; ++y)
    for (int x = 1; x <= g.nx; ++x)
      w.push_back((x > 1) + (x < g.nx) + (y > 1) + (y < g.ny));
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x = total > 0 ? x / total : 1.0;
  return w;
}

}  // namespace

TEST_CASE("1D kernel matches the symmetric walk entrywise") {
  const auto w = build_walk_1d({300.0, 3}, 0.98);
  Matrix expected(3, 3);
  expected << 0.02, 0.98, 0.0, 0.49, 0.02, 0.49, 0.0, 0.98, 0.02;
  CHECK((w.one_step - expected).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("1D kernel degenerate cases") {
  CHECK(build_walk_1d({300.0, 5}, 0.0).one_step.isIdentity(0.0));
  const auto two = build_walk_1d({300.0, 2}, 0.5).one_step;
  CHECK(two.isApproxToConstant(0.5));
  const auto one = build_walk_1d({300.0, 1}, 0.7).one_step;
  CHECK(one.rows() == 1);
  CHECK(one(0, 0) == 1.0);
}

TEST_CASE("1D kernel rejects bad input") {
  CHECK_THROWS_AS(build_walk_1d({300.0, 0}, 0.5), InvalidArgument);
  CHECK_THROWS_AS(build_walk_1d({300.0, 4}, 1.5), InvalidArgument);
  CHECK_THROWS_AS(build_walk_1d({300.0, 4}, -0.1), InvalidArgument);
  CHECK_THROWS_AS(build_walk_1d({-1.0, 4}, 0.5), InvalidArgument);
  CHECK_THROWS_AS(build_walk_1d({300.0, 4}, 0.5, -1), InvalidArgument);
}

TEST_CASE("2D kernel neighbour splits") {
  SUBCASE("single cell keeps all mass") {
    const auto w = build_walk_2d({1, 1, 10.0, {1, 1}, {1, 1}}, 0.9);
    CHECK(w.one_step(0, 0) == 1.0);
  }
  SUBCASE("2x2: every cell is a corner") {
    const auto p = build_walk_2d({2, 2, 10.0, {1, 1}, {2, 2}}, 0.8).one_step;
    for (int i = 0; i < 4; ++i) {
      CHECK(p(i, i) == doctest::Approx(0.2));
      int movers = 0;
      for (int j = 0; j < 4; ++j)
        if (j != i && p(i, j) > 0) {
          CHECK(p(i, j) == doctest::Approx(0.4));
          ++movers;
        }
      CHECK(movers == 2);
    }
    CHECK(p(0, 3) == 0.0);  // diagonal neighbour is not adjacent
  }
  SUBCASE("3x3 centre and edge rows") {
    const auto p = build_walk_2d({3, 3, 10.0, {1, 1}, {3, 3}}, 0.6).one_step;
    // centre is position 5, edge midpoint (2,1) is position 2
    CHECK(p(4, 4) == doctest::Approx(0.4));
    for (int j : {1, 3, 5, 7}) CHECK(p(4, j) == doctest::Approx(0.15));
    CHECK(p(1, 1) == doctest::Approx(0.4));
    for (int j : {0, 2, 4}) CHECK(p(1, j) == doctest::Approx(0.2));
    CHECK(p(1, 3) == 0.0);
  }
  SUBCASE("a single row has at most two neighbours per cell") {
    const auto p = build_walk_2d({6, 1, 10.0, {1, 1}, {6, 1}}, 0.6).one_step;
    for (int i = 0; i < 6; ++i) {
      int movers = 0;
      for (int j = 0; j < 6; ++j) movers += (j != i && p(i, j) > 0);
      CHECK(movers == ((i == 0 || i == 5) ? 1 : 2));
    }
    CHECK(p(0, 1) == doctest::Approx(0.6));
    CHECK(p(2, 1) == doctest::Approx(0.3));
  }
}

TEST_CASE("grid coordinates and hop distances") {
  const Geometry2D g{5, 5, 10.0, {1, 1}, {5, 5}};
  const auto c = grid_coordinates(g, 12);
  CHECK(c.x == 2);
  CHECK(c.y == 3);
  // relay at (4,5) = position 4 + 4*5 = 24; 3-4-5 triangle from (1,1)
  const auto d = hop_distances(g, 24);
  CHECK(d.source == doctest::Approx(50.0));
  CHECK(d.relay == doctest::Approx(10.0));

  const auto d1 = hop_distances(Geometry1D{300.0, 10}, 5);
  CHECK(d1.source == doctest::Approx(300.0 * 5 / 11));
  CHECK(d1.relay == doctest::Approx(300.0 - 300.0 * 5 / 11));
  const auto mid = hop_distances(Geometry1D{300.0, 1}, 1);
  CHECK(mid.source == doctest::Approx(150.0));
  CHECK(mid.relay == doctest::Approx(150.0));

  CHECK_THROWS_AS(hop_distances(Geometry1D{300.0, 10}, 0), InvalidArgument);
  CHECK_THROWS_AS(hop_distances(Geometry1D{300.0, 10}, 11), InvalidArgument);
  CHECK_THROWS_AS(hop_distances(g, 26), InvalidArgument);
}

TEST_CASE("step kernel powers") {
  const auto w = build_walk_1d({300.0, 3}, 0.98, 2);
  const Matrix p2 = step_kernel(w);
  CHECK(p2(0, 0) == doctest::Approx(0.02 * 0.02 + 0.98 * 0.49).epsilon(1e-14));
  CHECK(p2(0, 0) == doctest::Approx(0.4806));

  CHECK(matrix_power(w.one_step, 0).isIdentity(0.0));
  CHECK((matrix_power(w.one_step, 1) - w.one_step).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("walk stationary law against detailed balance") {
  const auto mu = walk_stationary(build_walk_1d({300.0, 10}, 0.98)).mass;
  REQUIRE(mu.size() == 10);
  CHECK(mu[0] == doctest::Approx(1.0 / 18).epsilon(1e-12));
  CHECK(mu[9] == doctest::Approx(1.0 / 18).epsilon(1e-12));
  for (int i = 1; i < 9; ++i) CHECK(mu[i] == doctest::Approx(1.0 / 9).epsilon(1e-12));

  const auto two = walk_stationary(build_walk_1d({300.0, 2}, 0.3)).mass;
  CHECK(two[0] == doctest::Approx(0.5));
  CHECK(walk_stationary(build_walk_1d({300.0, 1}, 0.3)).mass[0] == 1.0);

  const auto frozen = walk_stationary(build_walk_1d({300.0, 4}, 0.0));
  CHECK(frozen.uniform_fallback);
  for (double m : frozen.mass) CHECK(m == 0.25);
}

TEST_CASE("property: random kernels are stochastic, symmetric and balanced") {
  gen::Rng rng(0x5eed0001);
  for (int trial = 0; trial < 200; ++trial) {
    CAPTURE(trial);
    const bool one_d = rng.coin();
    const double p_move = rng.uniform(0.01, 1.0);
    const int steps = rng.integer(0, 6);
    WalkKernel w;
    std::vector<double> oracle;
    if (one_d) {
      const int n = rng.integer(1, 15);
      w = build_walk_1d({rng.uniform(10, 500), n}, p_move, steps);
      oracle = balance_oracle_1d(n);
      // relabelling i -> N+1-i leaves the kernel unchanged
      const Matrix flipped = w.one_step.colwise().reverse().rowwise().reverse();
      CHECK((flipped - w.one_step).cwiseAbs().maxCoeff() == 0.0);
    } else {
      Geometry2D g{rng.integer(1, 5), rng.integer(1, 5), 10.0, {1, 1}, {1, 1}};
      w = build_walk_2d(g, p_move, steps);
      oracle = balance_oracle_2d(g);
      if (g.nx * g.ny == 1) oracle = {1.0};
    }
    CHECK(max_row_sum_error(w.one_step) < 1e-12);
    CHECK(w.one_step.minCoeff() >= 0.0);
    const Matrix ps = step_kernel(w);
    CHECK(max_row_sum_error(ps) < 1e-12);

    // s = a + b  <=>  P^a P^b
    const unsigned a = rng.integer(0, 4);
    const unsigned b = rng.integer(0, 4);
    const Matrix lhs = matrix_power(w.one_step, a + b);
    const Matrix rhs = matrix_power(w.one_step, a) * matrix_power(w.one_step, b);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);

    const auto mu = walk_stationary(w).mass;
    Eigen::Map<const Eigen::RowVectorXd> m(mu.data(), static_cast<Eigen::Index>(mu.size()));
    CHECK((m * w.one_step - m).cwiseAbs().maxCoeff() < 1e-10);
    for (std::size_t i = 0; i < mu.size(); ++i) CHECK(mu[i] == doctest::Approx(oracle[i]).epsilon(1e-9));
  }
}
