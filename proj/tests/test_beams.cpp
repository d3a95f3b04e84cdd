#include <doctest.h>

#include <random>

#include "rydgate/beams.hpp"
#include "rydgate/error.hpp"

using namespace rydgate;

TEST_CASE("overlap theta") {
  CHECK(overlap_theta(0.7, 0.0) == 1.0);
  CHECK(overlap_theta(1.3, std::sqrt(std::log(2.0) / 1.3)) == doctest::Approx(0.5));
  CHECK(overlap_theta(1e6, 1.0) == 0.0);
  CHECK_THROWS_AS(overlap_theta(0.0, 1.0), InvalidArgument);
}

TEST_CASE("overlap matrices") {
  const double alpha = 0.8, r = 0.9;
  const auto two = build_overlap_matrix(BeamGeometry::gaussian(alpha, {{0, 0, 0}, {r, 0, 0}}));
  const double theta = overlap_theta(alpha, r);
  CHECK(two.s(0, 1) == doctest::Approx(theta));
  CHECK(two.s(1, 0) == two.s(0, 1));
  CHECK(two.s(0, 0) == 1.0);

  const auto three = build_overlap_matrix(BeamGeometry::gaussian(alpha, {{0, 0, 0}, {r, 0, 0}, {2 * r, 0, 0}}));
  CHECK(three.s(0, 2) == doctest::Approx(std::pow(theta, 4)));
  CHECK(three.condition_number >= 1.0);

  SUBCASE("coincident sites name the pair") {
    try {
      build_overlap_matrix(BeamGeometry::gaussian(alpha, {{0, 0, 0}, {1, 0, 0}, {1, 0, 0}}));
      FAIL("expected an exception");
    } catch (const InvalidArgument& e) {
      CHECK(std::string(e.what()).find("1") != std::string::npos);
      CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
  }
  SUBCASE("near-singular geometry is a numerical error") {
    CHECK_THROWS_AS(build_overlap_matrix(BeamGeometry::gaussian(1.0, {{0, 0, 0}, {1e-7, 0, 0}})), NumericalError);
  }
  CHECK_THROWS_AS(build_overlap_matrix(BeamGeometry::gaussian(1.0, {{0, 0, 0}})), InvalidArgument);
}

TEST_CASE("two-qubit amplitudes") {
  Eigen::Matrix2d s;
  s << 1.0, 0.5, 0.5, 1.0;
  const auto geo = BeamGeometry::from_overlaps(s);

  SUBCASE("theta = 0 leaves the target unchanged") {
    Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
    const auto sol = solve_amplitudes(BeamGeometry::from_overlaps(id), Eigen::Vector2d(0.6, 0.8), 2.0);
    CHECK(sol.fields[0] == doctest::Approx(1.2));
    CHECK(sol.fields[1] == doctest::Approx(1.6));
  }
  SUBCASE("decoupling a qubit needs a negative neighbour beam") {
    const auto sol = solve_amplitudes(geo, Eigen::Vector2d(1.0, 0.0), 1.0);
    CHECK(sol.fields[1] == doctest::Approx(-0.5 * sol.fields[0]));
    CHECK(amplitude_ratio(0.0, 0.5) == doctest::Approx(-0.5));
  }
  CHECK(amplitude_ratio(0.5, 0.5) == doctest::Approx(0.0));
  CHECK(amplitude_ratio(1.0, 0.37) == doctest::Approx(1.0));
  CHECK_THROWS_AS(amplitude_ratio(2.0, 0.5), InvalidArgument);
  CHECK_THROWS_AS(solve_amplitudes(geo, Eigen::Vector2d(1.0, 1.0), 1.0), InvalidArgument);

  SUBCASE("explicit inverse matches the general solver") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> angle(0, 2 * kPi), th(0.0, 0.95);
    for (int k = 0; k < 200; ++k) {
      const double t = th(rng), m = angle(rng);
      Eigen::Matrix2d st;
      st << 1.0, t, t, 1.0;
      const StructuralVector e(std::cos(m), std::sin(m));
      const auto general = solve_amplitudes(BeamGeometry::from_overlaps(st), Eigen::Vector2d(e.a(), e.b()), 1.7);
      const Eigen::Vector2d explicit_inv = solve_amplitudes_two_qubit(t, e, 1.7);
      CHECK((general.fields - explicit_inv).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("ratio magnitude and sign laws") {
  for (double x = 0.0; x <= 1.0; x += 0.05) {
    for (double t = 0.05; t < 1.0; t += 0.05) {
      const double r = amplitude_ratio(x, t);
      if (x > 0.0 && x < 1.0 && t < 2 * x / (1 + x * x)) CHECK(std::abs(r) < x);
      if (x > 0.0 && x < 1.0 && t > 2 * x / (1 + x * x) + 1e-9) CHECK(std::abs(r) > x);
      if (std::abs(t - x) > 1e-12) CHECK((r < 0.0) == (t > x));
    }
  }
}

TEST_CASE("N-qubit round trip") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> coord(-3, 3), comp(-1, 1);
  for (int k = 0; k < 50; ++k) {
    const int n = 2 + k % 4;
    std::vector<Eigen::Vector3d> pos;
    for (int i = 0; i < n; ++i) pos.emplace_back(coord(rng), coord(rng), coord(rng));
    Eigen::VectorXd e(n);
    for (int i = 0; i < n; ++i) e[i] = comp(rng);
    e.normalize();
    const auto geo = BeamGeometry::gaussian(0.5, pos);
    BeamAmplitudeSolution sol;
    try {
      sol = solve_amplitudes(geo, e, 3.0);
    } catch (const NumericalError&) {
      continue;
    }
    const Eigen::VectorXd back = build_overlap_matrix(geo).s * sol.fields;
    CHECK((back.normalized() - e).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(sol.residual < 1e-10 * 3.0);
  }
}
