#include "rydgate/gate_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rydgate/error.hpp"

namespace rydgate {

namespace {

constexpr double kNormTolerance = 1e-12;

// exp(i theta M) for the Hermitian coupling M = [[0, c^T], [c^*, 0]] with
// |c| = 1. M^3 = M, hence exp(i theta M) = I + i sin(theta) M + (cos(theta) - 1) M^2.
template <int N>
Eigen::Matrix<cplx, N, N> coupling_exponential(double theta, const Eigen::Matrix<cplx, N, N>& m) {
  using M = Eigen::Matrix<cplx, N, N>;
  return M::Identity() + cplx(0.0, std::sin(theta)) * m + (std::cos(theta) - 1.0) * (m * m);
}

}  // namespace

StructuralVector::StructuralVector(double a, double b) : a_(a), b_(b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidArgument("structural vector components must be finite");
  }
  if (std::abs(a * a + b * b - 1.0) > kNormTolerance) {
    throw InvalidArgument("structural vector must satisfy a^2 + b^2 = 1, got (" + std::to_string(a) +
                          ", " + std::to_string(b) + ")");
  }
}

StructuralVector StructuralVector::normalized(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidArgument("structural vector components must be finite");
  }
  const double n = std::hypot(a, b);
  if (n == 0.0) throw InvalidArgument("cannot normalize the zero structural vector");
  return StructuralVector(a / n, b / n, Unchecked{});
}

double StructuralVector::ratio() const {
  if (a_ == 0.0) return std::copysign(std::numeric_limits<double>::infinity(), b_);
  return b_ / a_;
}

StructuralVector structural_from_ratio(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("ratio x must be finite");
  return StructuralVector::normalized(1.0, x);
}

const char* to_string(Subsystem s) {
  switch (s) {
    case Subsystem::V: return "V";
    case Subsystem::A: return "A";
    case Subsystem::B: return "B";
  }
  return "?";
}

double Pulse::mixing_angle(Subsystem s) const { return 0.5 * gpa(*this, s); }

double gpa(const Pulse& p, Subsystem s) {
  switch (s) {
    case Subsystem::V: return p.area;
    case Subsystem::A: return p.structural.a() * p.area;
    case Subsystem::B: return p.structural.b() * p.area;
  }
  return 0.0;
}

double PulseSequence::accumulated_area() const {
  double total = 0.0;
  for (const auto& p : pulses) total += std::abs(p.area);
  return total;
}

cplx PropagatorSet::diagonal(Subsystem s) const {
  switch (s) {
    case Subsystem::V: return v(0, 0);
    case Subsystem::A: return a(0, 0);
    case Subsystem::B: return b(0, 0);
  }
  return {};
}

double PropagatorSet::unitarity_defect() const {
  const double dv = (v.adjoint() * v - Mat3::Identity()).cwiseAbs().maxCoeff();
  const double da = (a.adjoint() * a - Mat2::Identity()).cwiseAbs().maxCoeff();
  const double db = (b.adjoint() * b - Mat2::Identity()).cwiseAbs().maxCoeff();
  return std::max({dv, da, db});
}

double PropagatorSet::max_abs_diff(const PropagatorSet& other) const {
  return std::max({(v - other.v).cwiseAbs().maxCoeff(), (a - other.a).cwiseAbs().maxCoeff(),
                   (b - other.b).cwiseAbs().maxCoeff()});
}

PropagatorSet operator*(const PropagatorSet& later, const PropagatorSet& earlier) {
  PropagatorSet out;
  out.v = later.v * earlier.v;
  out.a = later.a * earlier.a;
  out.b = later.b * earlier.b;
  return out;
}

PropagatorSet propagator_single(const Pulse& p) {
  const cplx phase = std::polar(1.0, p.phase);
  const double a = p.structural.a();
  const double b = p.structural.b();

  Mat3 mv = Mat3::Zero();
  mv(0, 1) = a * phase;
  mv(0, 2) = b * phase;
  mv(1, 0) = a * std::conj(phase);
  mv(2, 0) = b * std::conj(phase);

  Mat2 m2 = Mat2::Zero();
  m2(0, 1) = phase;
  m2(1, 0) = std::conj(phase);

  PropagatorSet out;
  out.v = coupling_exponential<3>(p.mixing_angle(Subsystem::V), mv);
  out.a = coupling_exponential<2>(p.mixing_angle(Subsystem::A), m2);
  out.b = coupling_exponential<2>(p.mixing_angle(Subsystem::B), m2);
  return out;
}

PropagatorSet compose(const PulseSequence& seq) {
  if (seq.empty()) throw InvalidArgument("cannot compose an empty pulse sequence");
  PropagatorSet total = propagator_single(seq.pulses.front());
  for (std::size_t k = 1; k < seq.size(); ++k) total = propagator_single(seq.pulses[k]) * total;
  return total;
}

}  // namespace rydgate
