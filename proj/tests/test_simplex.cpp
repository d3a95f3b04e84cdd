#include <doctest.h>

#include <cmath>

#include "rydgate/simplex.hpp"

using rydgate::maximize_simplex;

TEST_CASE("quadratic peak") {
  auto f = [](const std::vector<double>& p) { return -(p[0] - 0.3) * (p[0] - 0.3) - 2 * (p[1] + 0.1) * (p[1] + 0.1); };
  const auto r = maximize_simplex(f, {0.0, 0.0}, {-1, -1}, {1, 1});
  CHECK(r.converged);
  CHECK(r.point[0] == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(r.point[1] == doctest::Approx(-0.1).epsilon(1e-6));
}

TEST_CASE("box constraint holds at the boundary") {
  auto f = [](const std::vector<double>& p) { return p[0] + p[1]; };
  const auto r = maximize_simplex(f, {0.0, 0.0}, {-1, -1}, {0.5, 0.25});
  CHECK(r.point[0] <= 0.5);
  CHECK(r.point[1] <= 0.25);
  CHECK(r.value == doctest::Approx(0.75).epsilon(1e-5));
}

TEST_CASE("rosenbrock in four dimensions") {
  auto f = [](const std::vector<double>& p) {
    double s = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      s += 100 * std::pow(p[i + 1] - p[i] * p[i], 2) + std::pow(1 - p[i], 2);
    }
    return -s;
  };
  rydgate::SimplexOptions o;
  o.max_iterations = 20000;
  const auto r = maximize_simplex(f, {0.5, 0.5, 0.5, 0.5}, {-2, -2, -2, -2}, {2, 2, 2, 2}, o);
  for (double v : r.point) CHECK(v == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("iteration cap reports non-convergence") {
  auto f = [](const std::vector<double>& p) { return -std::abs(p[0] - 0.123456) - std::abs(p[1] + 0.3); };
  rydgate::SimplexOptions o;
  o.max_iterations = 3;
  const auto r = maximize_simplex(f, {0.9, 0.9}, {-1, -1}, {1, 1}, o);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 3);
}
