#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rydgate/gate_core.hpp"
#include "rydgate/kernels.hpp"

namespace rydgate {

// Shot-to-shot fluctuation magnitudes. Position noise comes from exactly one
// of: delta_R, temperature (scaled from a reference pair), or diffusion
// (diffusion_D, t_gate, distance; any consistent units).
struct NoiseSpec {
  double delta_I = 0.0;                 // relative intensity std
  std::optional<double> delta_R;        // relative interatomic-distance std
  double delta_phi = 0.01 * kPi;        // absolute phase std, radians
  std::optional<double> temperature_uK;
  double reference_delta_R = 0.01;
  double reference_temperature_uK = 25.0;
  std::optional<double> diffusion_D;
  std::optional<double> t_gate;
  std::optional<double> distance;
  double theta = 0.25;                  // beam overlap at the neighbouring qubit
  int samples = 1000;
  std::uint64_t seed = 0;

  void validate() const;
};

// "standard", "ultra" or "none"; throws InvalidArgument otherwise.
NoiseSpec noise_preset(const std::string& name);

// Relative pulse-area std from relative intensity std: dI / 2.
double delta_area(double delta_I);

// Relative std of x = b/a: sqrt(dI^2 + (2 + 1/(x^2 (x^2 + 1))) theta^2 dR^2).
double delta_ratio(double x, double theta, double delta_I, double delta_R);

double delta_R_effective(const NoiseSpec& spec);

struct SampledSequence {
  PulseSequence sequence;
  int truncations = 0;  // redraws because x would have changed sign
};

// One perturbed copy of seq; a pure function of (spec.seed, sample_index).
// Per pulse: A -> A (1 + gI dA); x -> x (1 + gI dI + gR c theta dR) with
// c = sqrt(2 + 1/(x^2 (x^2+1))); phase -> phase + gP dphi. gI is shared by
// area and ratio of a pulse.
SampledSequence sample_protocol(const PulseSequence& seq, const NoiseSpec& spec,
                                std::uint64_t sample_index);

struct NoiseSummary {
  double mean_f = 0.0;
  double std_f = 0.0;  // sample standard deviation (n - 1)
  int samples = 0;
  std::int64_t truncations = 0;
  std::vector<double> per_sample;  // filled when requested
};

NoiseSummary monte_carlo(const PulseSequence& seq, const NoiseSpec& spec,
                         Exec exec = Exec::Parallel, bool keep_samples = false);

struct NoiseRow {
  int l_prime = 0;
  double x_op = 0.0;
  double area_op = 0.0;
  double ideal_f = 0.0;
  NoiseSummary summary;
};

// Single-pulse protocols (l, l, 0) at their analytic (x_op, A_op).
std::vector<NoiseRow> noise_series(const std::vector<int>& l_values, const NoiseSpec& spec,
                                   Exec exec = Exec::Parallel);

}  // namespace rydgate
