#pragma once

#include <span>

#include "rydgate/gate_core.hpp"

namespace rydgate {

enum class EnvelopeShape { Gaussian, Square };

// Time profile of a pulse over a finite window [0, duration]. The Gaussian is
// centred in the window with sigma = duration / 8 (truncated at +-4 sigma) and
// rescaled so the truncated profile integrates to the pulse area.
struct Envelope {
  EnvelopeShape shape = EnvelopeShape::Gaussian;
  double duration = 1.0;
};

struct TdseOptions {
  int steps = 4000;                 // RK4 steps per pulse, >= 1000
  int max_steps = 256000;           // doubling stops here
  double halving_tolerance = 1e-8;  // max |U(n) - U(2n)|
};

// Integrates i dU/dt = H(t) U block by block with classical RK4, pulse by
// pulse. Doubles the step count from `steps` until two successive results
// agree within halving_tolerance and returns the finer one; throws
// NumericalError if that needs more than max_steps.
PropagatorSet propagate_numeric(const PulseSequence& seq, std::span<const Envelope> envelopes,
                                const TdseOptions& options = {});

PropagatorSet propagate_numeric(const PulseSequence& seq, const Envelope& envelope = {},
                                const TdseOptions& options = {});

// Rabi frequency Omega(t) for a pulse of the given area.
double envelope_rabi(const Envelope& env, double area, double t);

}  // namespace rydgate
