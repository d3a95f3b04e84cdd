#include "rydgate/tdse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "rydgate/error.hpp"

namespace rydgate {

namespace {

constexpr double kTruncationSigmas = 4.0;

double gaussian_norm(double sigma) {
  // integral of exp(-t^2 / 2 sigma^2) over [-4 sigma, 4 sigma]
  return sigma * std::sqrt(2.0 * kPi) * std::erf(kTruncationSigmas / std::sqrt(2.0));
}

// Hermitian generator structure for one block; H(t) = -Omega(t)/2 * coupling.
template <int N>
Eigen::Matrix<cplx, N, N> rk4_block(const Eigen::Matrix<cplx, N, N>& coupling, const Envelope& env,
                                    double area, int steps) {
  using M = Eigen::Matrix<cplx, N, N>;
  const double dt = env.duration / steps;
  const cplx minus_i(0.0, -1.0);
  // dU/dt = -i H U = (i Omega / 2) coupling U
  auto rhs = [&](double t, const M& u) -> M {
    return (-minus_i * 0.5 * envelope_rabi(env, area, std::min(t, env.duration))) * (coupling * u);
  };
  M u = M::Identity();
  for (int s = 0; s < steps; ++s) {
    const double t = env.duration * s / steps;
    const double t_end = env.duration * (s + 1) / steps;
    const M k1 = rhs(t, u);
    const M k2 = rhs(0.5 * (t + t_end), u + 0.5 * dt * k1);
    const M k3 = rhs(0.5 * (t + t_end), u + 0.5 * dt * k2);
    const M k4 = rhs(t_end, u + dt * k3);
    u += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return u;
}

PropagatorSet integrate_pulse(const Pulse& p, const Envelope& env, int steps) {
  const cplx phase = std::polar(1.0, p.phase);
  const double a = p.structural.a();
  const double b = p.structural.b();

  Mat3 cv = Mat3::Zero();
  cv(0, 1) = a * phase;
  cv(0, 2) = b * phase;
  cv(1, 0) = a * std::conj(phase);
  cv(2, 0) = b * std::conj(phase);

  Mat2 ca = Mat2::Zero();
  ca(0, 1) = a * phase;
  ca(1, 0) = a * std::conj(phase);
  Mat2 cb = Mat2::Zero();
  cb(0, 1) = b * phase;
  cb(1, 0) = b * std::conj(phase);

  PropagatorSet out;
  out.v = rk4_block<3>(cv, env, p.area, steps);
  out.a = rk4_block<2>(ca, env, p.area, steps);
  out.b = rk4_block<2>(cb, env, p.area, steps);
  return out;
}

PropagatorSet integrate_sequence(const PulseSequence& seq, std::span<const Envelope> envs, int steps) {
  PropagatorSet total;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    total = integrate_pulse(seq.pulses[k], envs[k], steps) * total;
  }
  return total;
}

}  // namespace

double envelope_rabi(const Envelope& env, double area, double t) {
  if (t < 0.0 || t > env.duration) return 0.0;
  switch (env.shape) {
    case EnvelopeShape::Square:
      return area / env.duration;
    case EnvelopeShape::Gaussian: {
      const double sigma = env.duration / (2.0 * kTruncationSigmas);
      const double u = (t - 0.5 * env.duration) / sigma;
      return area * std::exp(-0.5 * u * u) / gaussian_norm(sigma);
    }
  }
  return 0.0;
}

PropagatorSet propagate_numeric(const PulseSequence& seq, std::span<const Envelope> envelopes,
                                const TdseOptions& options) {
  if (seq.empty()) throw InvalidArgument("cannot integrate an empty pulse sequence");
  if (envelopes.size() != seq.size()) {
    throw InvalidArgument("need one envelope per pulse, got " + std::to_string(envelopes.size()) +
                          " for " + std::to_string(seq.size()) + " pulses");
  }
  if (options.steps < 1000) throw InvalidArgument("TDSE oracle needs at least 1000 steps per pulse");
  for (const auto& env : envelopes) {
    if (!(env.duration > 0.0)) throw InvalidArgument("envelope duration must be positive");
  }

  if (options.max_steps < options.steps) throw InvalidArgument("TDSE max_steps must be at least steps");

  int steps = options.steps;
  PropagatorSet coarse = integrate_sequence(seq, envelopes, steps);
  for (;;) {
    const PropagatorSet fine = integrate_sequence(seq, envelopes, 2 * steps);
    const double diff = coarse.max_abs_diff(fine);
    if (diff <= options.halving_tolerance) return fine;
    if (2 * steps > options.max_steps || !std::isfinite(diff)) {
      char msg[160];
      std::snprintf(msg, sizeof msg, "TDSE step-halving check failed: |dU| = %.3g between %d and %d steps",
                    diff, steps, 2 * steps);
      throw NumericalError(msg);
    }
    steps *= 2;
    coarse = fine;
  }
}

PropagatorSet propagate_numeric(const PulseSequence& seq, const Envelope& envelope,
                                const TdseOptions& options) {
  const std::vector<Envelope> envs(seq.size(), envelope);
  return propagate_numeric(seq, envs, options);
}

}  // namespace rydgate
