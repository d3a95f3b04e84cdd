#include <doctest.h>

#include <random>

#include "rydgate/fidelity.hpp"

using namespace rydgate;

namespace {

double hand_fidelity(double area, double x) {
  const double a = 1.0 / std::sqrt(1.0 + x * x);
  const double b = x * a;
  const double s = 1.0 - std::cos(area / 2) - std::cos(a * area / 2) - std::cos(b * area / 2);
  return s * s / 16.0;
}

StructuralVector random_vector(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0, 2 * kPi);
  const double m = angle(rng);
  return StructuralVector(std::cos(m), std::sin(m));
}

}  // namespace

TEST_CASE("fidelity limits") {
  PropagatorSet u;
  CHECK(fidelity(u) == doctest::Approx(0.25));
  u.v(0, 0) = -1.0;
  u.a(0, 0) = -1.0;
  u.b(0, 0) = -1.0;
  CHECK(fidelity(u) == doctest::Approx(1.0));
  CHECK(fidelity_single(0.0, 1.0) == doctest::Approx(0.25));
  CHECK(fidelity_single(2 * kPi, 0.0) == doctest::Approx(0.25));
}

TEST_CASE("single-pulse values") {
  CHECK(fidelity_single((1 + std::sqrt(2.0)) * kPi, 1.0) == doctest::Approx(0.804).epsilon(0.0025));
  CHECK(fidelity_single(6.17 * kPi, 1.0 / 3.0) == doctest::Approx(0.968).epsilon(0.002));
  const double f14 = fidelity_single(14.07 * kPi, 1.0);
  CHECK(f14 >= 0.990);
  CHECK(f14 <= 0.995);
}

TEST_CASE("single-pulse oracle and x <-> 1/x symmetry") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> area(0, 20 * kPi), ratio(0.02, 5.0);
  for (int k = 0; k < 500; ++k) {
    const double a = area(rng), x = ratio(rng);
    const double f = fidelity_single(a, x);
    CHECK(f == doctest::Approx(hand_fidelity(a, x)).epsilon(1e-12));
    CHECK(f == doctest::Approx(fidelity_single(a, 1.0 / x)).epsilon(1e-12));
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
  }
}

TEST_CASE("two-pulse closed form against the matrix product") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> area(-8 * kPi, 8 * kPi);
  for (int k = 0; k < 300; ++k) {
    const double a1 = area(rng), a2 = area(rng);
    const auto e1 = random_vector(rng), e2 = random_vector(rng);
    const PropagatorSet u = compose({{Pulse{a1, e1, 0.0}, Pulse{a2, e2, 0.0}}});
    const DiagonalTriple d = two_pulse_closed_form(a1, a2, e1, e2);
    CHECK(std::abs(u.diagonal(Subsystem::V) - d.v) < 1e-12);
    CHECK(std::abs(u.diagonal(Subsystem::A) - d.a) < 1e-12);
    CHECK(std::abs(u.diagonal(Subsystem::B) - d.b) < 1e-12);
    CHECK(std::abs(fidelity(u) - two_pulse_fidelity(a1, a2, e1, e2)) < 1e-12);
  }
}

TEST_CASE("aligned, anti-aligned and orthogonal reductions") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> area(0, 10 * kPi), ratio(0.05, 1.0);
  for (int k = 0; k < 200; ++k) {
    const double a1 = area(rng), a2 = area(rng), x = ratio(rng);
    const auto e = structural_from_ratio(x);
    CHECK(std::abs(two_pulse_fidelity(a1, a2, e, e) - fidelity_single(a1 + a2, x)) < 1e-12);
    CHECK(std::abs(two_pulse_fidelity(a1, a2, e, -e) - fidelity_single(a1 - a2, x)) < 1e-12);
    const StructuralVector o(-e.b(), e.a());
    CHECK(two_pulse_closed_form(a1, a2, e, o).v == doctest::Approx(std::cos(a1 / 2) * std::cos(a2 / 2)));
    CHECK(two_pulse_closed_form(a1, a2, e, e).v == doctest::Approx(std::cos((a1 + a2) / 2)));
    CHECK(two_pulse_closed_form(a1, a2, e, -e).v == doctest::Approx(std::cos((a1 - a2) / 2)));
  }
}

TEST_CASE("checkered pattern gives U^V = -1") {
  const auto e = structural_from_ratio(0.3);
  const StructuralVector o(-e.b(), e.a());
  for (int l = 0; l < 4; ++l) {
    for (int m = 1; m < 4; ++m) {
      CHECK(std::abs(two_pulse_closed_form((4 * l + 2) * kPi, 4 * m * kPi, e, o).v + 1.0) < 1e-12);
    }
  }
}

TEST_CASE("phased sequences have complex diagonals and F uses the modulus") {
  const auto e = structural_from_ratio(0.5);
  const PulseSequence seq{{Pulse{3.0, e, 0.0}, Pulse{5.0, e, 1.1}}};
  const PropagatorSet u = compose(seq);
  CHECK(std::abs(u.diagonal(Subsystem::V).imag()) > 1e-3);
  const cplx s = 1.0 - u.diagonal(Subsystem::A) - u.diagonal(Subsystem::B) - u.diagonal(Subsystem::V);
  CHECK(fidelity(u) == doctest::Approx(std::norm(s) / 16.0));
  CHECK(fidelity(u) <= 1.0);
}

TEST_CASE("mechanism labels") {
  SUBCASE("single pulse is 0-loop everywhere") {
    const auto labels = classify_mechanism({{Pulse{6 * kPi, structural_from_ratio(1.0 / 3.0), 0.0}}});
    for (const auto& m : labels) {
      CHECK(m.kind == LoopKind::ZeroLoop);
      CHECK(m.w1 < 1e-20);
    }
  }
  SUBCASE("zero areas") {
    const auto labels = classify_mechanism({{Pulse{0, StructuralVector(), 0}, Pulse{0, StructuralVector(), 0}}});
    for (const auto& m : labels) CHECK(m.kind == LoopKind::ZeroLoop);
  }
  SUBCASE("A1 = 4pi, x1 = 1/4 opens a loop in B only") {
    const double x2 = 0.5;
    const PulseSequence seq{{Pulse{4 * kPi, structural_from_ratio(0.25), 0.0},
                             Pulse{kPi * std::sqrt(1 + x2 * x2) / x2, structural_from_ratio(x2), 0.0}}};
    const auto labels = classify_mechanism(seq);
    CHECK(labels[2].kind == LoopKind::OneLoop);
    CHECK(labels[1].kind == LoopKind::ZeroLoop);
    for (const auto& m : labels) {
      CHECK(m.w0 >= 0.0);
      CHECK(m.w0 <= 1.0 + 1e-12);
      CHECK(m.w1 <= 1.0 + 1e-12);
    }
  }
  SUBCASE("two-pulse weights follow the path products") {
    const auto e1 = structural_from_ratio(0.3), e2 = structural_from_ratio(-1.7);
    const double a1 = 2.2, a2 = 5.1;
    const auto labels = classify_mechanism({{Pulse{a1, e1, 0.0}, Pulse{a2, e2, 0.0}}});
    const double c = std::cos(a1 / 2) * std::cos(a2 / 2);
    const double s = e1.dot(e2) * std::sin(a1 / 2) * std::sin(a2 / 2);
    CHECK(labels[0].w0 == doctest::Approx(c * c));
    CHECK(labels[0].w1 == doctest::Approx(s * s));
  }
}
