#include "doctest.h"
#include "generators.hpp"
#include "mrlink/error.hpp"
#include "mrlink/stationary.hpp"

using namespace mrlink;

TEST_CASE("two-state chain closed form") {
  gen::Rng rng(0x5eed0101);
  for (int k = 0; k < 100; ++k) {
    const double a = rng.uniform(0.001, 1.0);
    const double b = rng.uniform(0.001, 1.0);
    Matrix m(2, 2);
    m << 1 - a, a, b, 1 - b;
    const auto r = stationary_distribution(m);
    CHECK(r.pi[0] == doctest::Approx(b / (a + b)).epsilon(1e-12));
    CHECK(r.pi[1] == doctest::Approx(a / (a + b)).epsilon(1e-12));
    CHECK(r.residual < 1e-12);
    CHECK_FALSE(r.used_fallback);
  }
}

TEST_CASE("periodic chain is handled by the direct solve") {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  const auto r = stationary_distribution(m);
  CHECK(r.pi[0] == doctest::Approx(0.5));
  CHECK(r.pi[1] == doctest::Approx(0.5));
}

TEST_CASE("transient states get zero mass") {
  // state 0 leaks into the closed class {1, 2}
  Matrix m(3, 3);
  m << 0.5, 0.25, 0.25, 0, 0.3, 0.7, 0, 0.6, 0.4;
  const auto r = stationary_distribution(m);
  CHECK(r.pi[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(r.pi[1] == doctest::Approx(0.6 / 1.3).epsilon(1e-12));
}

TEST_CASE("singular system falls back to iteration") {
  const Matrix m = Matrix::Identity(3, 3);
  const auto r = stationary_distribution(m);
  CHECK(r.used_fallback);
  CHECK(r.residual == 0.0);
  double total = 0;
  for (double p : r.pi) total += p;
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("iteration gives up after the iteration cap") {
  Matrix m(2, 2);
  m << 0.999999, 0.000001, 0.000002, 0.999998;
  StationaryOptions opt;
  opt.max_iterations = 3;
  opt.iteration_tolerance = 1e-300;
  CHECK_THROWS_AS(stationary_by_iteration(m, opt), NumericalError);
}

TEST_CASE("bad shapes are rejected") {
  CHECK_THROWS_AS(stationary_distribution(Matrix(2, 3)), InvalidArgument);
  CHECK_THROWS_AS(stationary_distribution(Matrix(0, 0)), InvalidArgument);
}

TEST_CASE("property: direct solve and power iteration agree on random dense chains") {
  gen::Rng rng(0x5eed0102);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = rng.integer(1, 25);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
      double total = 0;
      for (int j = 0; j < n; ++j) {
        m(i, j) = rng.coin() ? rng.uniform() : 0.0;
        total += m(i, j);
      }
      if (total == 0.0) {
        m(i, (i + 1) % n) = 1.0;
        total = 1.0;
      }
      m.row(i) /= total;
    }
    // keep it irreducible: a cycle with small weight
    for (int i = 0; i < n; ++i) {
      m.row(i) *= 0.9;
      m(i, (i + 1) % n) += 0.1;
    }
    const auto direct = stationary_distribution(m);
    const auto iter = stationary_by_iteration(m);
    CHECK(direct.residual < 1e-10);
    for (int i = 0; i < n; ++i) CHECK(direct.pi[i] == doctest::Approx(iter.pi[i]).epsilon(1e-9));
  }
}
