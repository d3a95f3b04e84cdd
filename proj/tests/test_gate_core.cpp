#include <doctest.h>

#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "rydgate/error.hpp"
#include "rydgate/gate_core.hpp"

using namespace rydgate;

namespace {

// Generic matrix exponential of the block Hamiltonians, independent of the closed form.
PropagatorSet expm_reference(const Pulse& p) {
  const cplx i(0.0, 1.0);
  const cplx ph = std::polar(1.0, p.phase);
  Mat3 hv = Mat3::Zero();
  hv(0, 1) = p.structural.a() * ph;
  hv(0, 2) = p.structural.b() * ph;
  hv(1, 0) = std::conj(hv(0, 1));
  hv(2, 0) = std::conj(hv(0, 2));
  Mat2 h2 = Mat2::Zero();
  h2(0, 1) = ph;
  h2(1, 0) = std::conj(ph);
  PropagatorSet out;
  out.v = (i * (0.5 * p.area) * hv).exp();
  out.a = (i * (0.5 * p.area * p.structural.a()) * h2).exp();
  out.b = (i * (0.5 * p.area * p.structural.b()) * h2).exp();
  return out;
}

Pulse random_pulse(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> area(-6 * kPi, 6 * kPi), angle(0, 2 * kPi);
  const double m = angle(rng);
  return Pulse{area(rng), StructuralVector(std::cos(m), std::sin(m)), angle(rng)};
}

}  // namespace

TEST_CASE("structural vector invariants") {
  CHECK_NOTHROW(StructuralVector(0.6, 0.8));
  CHECK_THROWS_AS(StructuralVector(0.6, 0.7), InvalidArgument);
  CHECK_THROWS_AS(StructuralVector::normalized(0.0, 0.0), InvalidArgument);
  const auto e = StructuralVector::normalized(3.0, 4.0);
  CHECK(e.a() == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(e.ratio() == doctest::Approx(4.0 / 3.0));
  CHECK(std::isinf(StructuralVector(0.0, 1.0).ratio()));
  const auto f = structural_from_ratio(-0.5);
  CHECK(f.a() > 0.0);
  CHECK(f.ratio() == doctest::Approx(-0.5));
  CHECK(f.a() * f.a() + f.b() * f.b() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("single-pulse propagators match the matrix exponential") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const Pulse p = random_pulse(rng);
    const PropagatorSet u = propagator_single(p);
    CHECK(u.max_abs_diff(expm_reference(p)) < 1e-12);
    CHECK(u.unitarity_defect() < 1e-12);
  }
}

TEST_CASE("diagonal entries") {
  const Pulse p{6.162 * kPi, structural_from_ratio(1.0 / 3.0), 0.0};
  const PropagatorSet u = propagator_single(p);
  CHECK(u.diagonal(Subsystem::V).real() == doctest::Approx(std::cos(p.area / 2)));
  CHECK(u.diagonal(Subsystem::A).real() == doctest::Approx(std::cos(p.structural.a() * p.area / 2)));
  CHECK(u.diagonal(Subsystem::B).real() == doctest::Approx(std::cos(p.structural.b() * p.area / 2)));
  CHECK(std::abs(u.diagonal(Subsystem::V).imag()) < 1e-15);

  SUBCASE("phase leaves the single-pulse diagonal unchanged") {
    Pulse q = p;
    q.phase = 0.7;
    const PropagatorSet w = propagator_single(q);
    for (Subsystem s : kSubsystems) CHECK(std::abs(w.diagonal(s) - u.diagonal(s)) < 1e-15);
  }
  SUBCASE("zero area is the identity") {
    const PropagatorSet z = propagator_single(Pulse{0.0, StructuralVector(), 0.0});
    CHECK(z.max_abs_diff(PropagatorSet::identity()) == 0.0);
  }
  SUBCASE("GPA") {
    CHECK(gpa(p, Subsystem::V) == p.area);
    CHECK(gpa(p, Subsystem::B) == doctest::Approx(p.area / std::sqrt(10.0)));
    CHECK(p.mixing_angle(Subsystem::A) == doctest::Approx(0.5 * p.area * 3.0 / std::sqrt(10.0)));
  }
}

TEST_CASE("composition") {
  std::mt19937_64 rng(5);
  PulseSequence seq;
  for (int k = 0; k < 4; ++k) seq.pulses.push_back(random_pulse(rng));
  PropagatorSet ref = expm_reference(seq.pulses[0]);
  for (int k = 1; k < 4; ++k) ref = expm_reference(seq.pulses[k]) * ref;
  CHECK(compose(seq).max_abs_diff(ref) < 1e-12);
  CHECK(compose(seq).unitarity_defect() < 1e-12);

  SUBCASE("time order matters") {
    const PulseSequence rev{{seq.pulses[1], seq.pulses[0]}};
    const PulseSequence fwd{{seq.pulses[0], seq.pulses[1]}};
    CHECK(compose(rev).max_abs_diff(compose(fwd)) > 1e-6);
  }
  SUBCASE("aligned pulses add their areas") {
    const auto e = structural_from_ratio(0.4);
    const PulseSequence two{{Pulse{2.3, e, 0.1}, Pulse{4.1, e, 0.1}}};
    CHECK(compose(two).max_abs_diff(propagator_single(Pulse{6.4, e, 0.1})) < 1e-12);
  }
  SUBCASE("accumulated area uses magnitudes") {
    const PulseSequence two{{Pulse{-kPi, StructuralVector(), 0}, Pulse{2 * kPi, StructuralVector(), 0}}};
    CHECK(two.accumulated_area() == doctest::Approx(3 * kPi));
  }
  CHECK_THROWS_AS(compose(PulseSequence{}), InvalidArgument);
}
