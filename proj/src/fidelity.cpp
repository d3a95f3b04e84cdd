#include "rydgate/fidelity.hpp"

#include <algorithm>
#include <cmath>

#include "rydgate/error.hpp"

namespace rydgate {

double fidelity(const PropagatorSet& u) {
  const cplx trace = 1.0 - u.a(0, 0) - u.b(0, 0) - u.v(0, 0);
  return std::norm(trace) / 16.0;
}

double fidelity_single(double area, double x) {
  const StructuralVector e = structural_from_ratio(x);
  const double uv = std::cos(0.5 * area);
  const double ua = std::cos(0.5 * e.a() * area);
  const double ub = std::cos(0.5 * e.b() * area);
  const double s = 1.0 - ua - ub - uv;
  return s * s / 16.0;
}

DiagonalTriple two_pulse_closed_form(double area1, double area2, const StructuralVector& e1,
                                     const StructuralVector& e2) {
  auto two_level = [](double t1, double t2) {
    return std::cos(t2) * std::cos(t1) - std::sin(t2) * std::sin(t1);
  };
  DiagonalTriple d;
  d.v = std::cos(0.5 * area2) * std::cos(0.5 * area1) -
        e1.dot(e2) * std::sin(0.5 * area2) * std::sin(0.5 * area1);
  d.a = two_level(0.5 * e1.a() * area1, 0.5 * e2.a() * area2);
  d.b = two_level(0.5 * e1.b() * area1, 0.5 * e2.b() * area2);
  return d;
}

double two_pulse_fidelity(double area1, double area2, const StructuralVector& e1,
                          const StructuralVector& e2) {
  const DiagonalTriple d = two_pulse_closed_form(area1, area2, e1, e2);
  const double s = 1.0 - d.a - d.b - d.v;
  return s * s / 16.0;
}

const char* to_string(LoopKind k) {
  switch (k) {
    case LoopKind::ZeroLoop: return "0-loop";
    case LoopKind::OneLoop: return "1-loop";
    case LoopKind::Mixed: return "mixed";
  }
  return "?";
}

std::array<MechanismLabel, 3> classify_mechanism(const PulseSequence& seq) {
  if (seq.empty()) throw InvalidArgument("cannot classify an empty pulse sequence");
  std::array<cplx, 3> zero_loop = {1.0, 1.0, 1.0};
  for (const auto& p : seq.pulses) {
    const PropagatorSet u = propagator_single(p);
    for (std::size_t s = 0; s < 3; ++s) zero_loop[s] *= u.diagonal(kSubsystems[s]);
  }
  const PropagatorSet total = compose(seq);

  std::array<MechanismLabel, 3> labels;
  for (std::size_t s = 0; s < 3; ++s) {
    MechanismLabel& m = labels[s];
    m.w0 = std::min(1.0, std::norm(zero_loop[s]));
    m.w1 = std::min(1.0, std::norm(total.diagonal(kSubsystems[s]) - zero_loop[s]));
    if (m.w1 < kLoopLabelThreshold * m.w0) {
      m.kind = LoopKind::ZeroLoop;
    } else if (m.w0 < kLoopLabelThreshold * m.w1) {
      m.kind = LoopKind::OneLoop;
    } else {
      m.kind = LoopKind::Mixed;
    }
  }
  return labels;
}

}  // namespace rydgate
