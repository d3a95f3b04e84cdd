#pragma once

#include <array>

#include "rydgate/gate_core.hpp"

namespace rydgate {

// CZ fidelity against diag(-1, -1, -1, 1) on {|00>, |01>, |10>, |11>}:
//   F = |1 - U^A_11 - U^B_11 - U^V_11|^2 / 16.
// For real diagonals this is (-Re U^A - Re U^B - Re U^V + 1)^2 / 16.
double fidelity(const PropagatorSet& u);

// Single pulse with ratio x and area A (phase irrelevant).
double fidelity_single(double area, double x);

struct DiagonalTriple {
  double v = 0.0;
  double a = 0.0;
  double b = 0.0;
};

// Closed-form (1,1) entries for two zero-phase pulses.
DiagonalTriple two_pulse_closed_form(double area1, double area2, const StructuralVector& e1,
                                     const StructuralVector& e2);

// Fidelity from the closed form; same value as fidelity(compose(...)) for zero phases.
double two_pulse_fidelity(double area1, double area2, const StructuralVector& e1,
                          const StructuralVector& e2);

enum class LoopKind { ZeroLoop, OneLoop, Mixed };

const char* to_string(LoopKind k);

struct MechanismLabel {
  LoopKind kind = LoopKind::ZeroLoop;
  double w0 = 0.0;  // weight of the path that never leaves the computational state
  double w1 = 0.0;  // weight of the paths that visit the Rydberg manifold
};

inline constexpr double kLoopLabelThreshold = 0.05;

// Per subsystem (indexed V, A, B). The 0-loop amplitude is the product of the
// per-pulse return amplitudes; the loop amplitude is the rest of U(1,1). For
// two pulses this is |cos t2 cos t1|^2 and |(e1.e2) sin t2 sin t1|^2 (V) or
// |sin t2 sin t1|^2 (A, B). Labels: ZeroLoop if w1 < 0.05 w0, OneLoop if
// w0 < 0.05 w1, else Mixed.
std::array<MechanismLabel, 3> classify_mechanism(const PulseSequence& seq);

}  // namespace rydgate
