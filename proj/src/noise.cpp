#include "rydgate/noise.hpp"

#include <cmath>
#include <string>

#include "rydgate/dioph_opt.hpp"
#include "rydgate/error.hpp"
#include "rydgate/fidelity.hpp"
#include "rydgate/philox.hpp"

namespace rydgate {

namespace {

constexpr int kMaxRedraws = 64;

void require_non_negative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw InvalidArgument(std::string(name) + " must be finite and non-negative");
  }
}

}  // namespace

void NoiseSpec::validate() const {
  require_non_negative(delta_I, "delta_I");
  require_non_negative(delta_phi, "delta_phi");
  require_non_negative(theta, "theta");
  if (delta_R) require_non_negative(*delta_R, "delta_R");
  if (temperature_uK) require_non_negative(*temperature_uK, "temperature");
  if (samples < 1) throw InvalidArgument("samples must be at least 1");
}

NoiseSpec noise_preset(const std::string& name) {
  NoiseSpec spec;
  if (name == "standard") {
    spec.delta_I = 0.03;
    spec.temperature_uK = 25.0;
    spec.delta_phi = 0.1 * kPi;
  } else if (name == "ultra") {
    spec.delta_I = 0.007;
    spec.temperature_uK = 3.0;
    spec.delta_phi = 0.01 * kPi;
  } else if (name == "none") {
    spec.delta_I = 0.0;
    spec.delta_R = 0.0;
    spec.delta_phi = 0.0;
  } else {
    throw InvalidArgument("unknown noise preset '" + name + "' (expected standard, ultra, none)");
  }
  return spec;
}

double delta_area(double delta_I) {
  require_non_negative(delta_I, "delta_I");
  return 0.5 * delta_I;
}

double delta_ratio(double x, double theta, double delta_I, double delta_R) {
  if (x == 0.0 || !std::isfinite(x)) {
    throw InvalidArgument("delta_ratio diverges at x = 0 (and needs finite x)");
  }
  const double x2 = x * x;
  const double position = (2.0 + 1.0 / (x2 * (x2 + 1.0))) * theta * theta * delta_R * delta_R;
  return std::sqrt(delta_I * delta_I + position);
}

double delta_R_effective(const NoiseSpec& spec) {
  if (spec.delta_R) return *spec.delta_R;
  if (spec.temperature_uK) {
    if (!(spec.reference_temperature_uK > 0.0)) {
      throw InvalidArgument("reference temperature must be positive");
    }
    return spec.reference_delta_R * std::sqrt(*spec.temperature_uK / spec.reference_temperature_uK);
  }
  if (spec.diffusion_D && spec.t_gate && spec.distance) {
    if (!(*spec.distance > 0.0)) throw InvalidArgument("interatomic distance must be positive");
    return std::sqrt(2.0 * *spec.diffusion_D * *spec.t_gate) / *spec.distance;
  }
  throw InvalidArgument(
      "position noise unspecified: give delta_R, a temperature, or diffusion_D + t_gate + distance");
}

SampledSequence sample_protocol(const PulseSequence& seq, const NoiseSpec& spec,
                                std::uint64_t sample_index) {
  spec.validate();
  const double d_area = delta_area(spec.delta_I);
  const double d_pos = spec.theta * delta_R_effective(spec);
  const Philox4x32 rng(spec.seed);
  const auto lo = static_cast<std::uint32_t>(sample_index);
  const auto hi = static_cast<std::uint32_t>(sample_index >> 32);

  SampledSequence out;
  out.sequence.pulses.reserve(seq.size());
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const Pulse& p = seq.pulses[k];
    const auto pulse_word = static_cast<std::uint32_t>(k);
    Pulse q = p;
    // Word 3 holds (attempt << 1) | block; block 1 carries the phase draw.
    q.phase = p.phase + spec.delta_phi * rng.normals({lo, hi, pulse_word, 1u}).first;

    const double x = p.structural.ratio();
    const bool perturb_ratio = std::isfinite(x) && x != 0.0;
    if (!perturb_ratio && d_pos > 0.0 && p.structural.b() == 0.0) {
      throw InvalidArgument("position noise diverges for a pulse with x = 0");
    }
    const double position_gain = perturb_ratio ? std::sqrt(2.0 + 1.0 / (x * x * (x * x + 1.0))) : 0.0;

    for (std::uint32_t attempt = 0;; ++attempt) {
      if (attempt >= kMaxRedraws) {
        throw NumericalError("ratio perturbation kept changing sign after " +
                             std::to_string(kMaxRedraws) + " redraws");
      }
      const auto [g_intensity, g_position] = rng.normals({lo, hi, pulse_word, attempt << 1});
      q.area = p.area * (1.0 + g_intensity * d_area);
      if (!perturb_ratio) break;
      const double x_new = x * (1.0 + g_intensity * spec.delta_I + g_position * position_gain * d_pos);
      if (x_new == x) break;
      if (x_new * x > 0.0) {
        const StructuralVector e = structural_from_ratio(x_new);
        q.structural = p.structural.a() < 0.0 ? -e : e;
        break;
      }
      ++out.truncations;
    }
    out.sequence.pulses.push_back(q);
  }
  return out;
}

NoiseSummary monte_carlo(const PulseSequence& seq, const NoiseSpec& spec, Exec exec,
                         bool keep_samples) {
  spec.validate();
  if (seq.empty()) throw InvalidArgument("cannot sample an empty pulse sequence");
  const auto n = static_cast<std::size_t>(spec.samples);
  std::vector<double> f(n);
  std::vector<int> truncated(n);
  kernels::for_each_index(n, exec, [&](std::size_t i) {
    const SampledSequence s = sample_protocol(seq, spec, i);
    f[i] = fidelity(compose(s.sequence));
    truncated[i] = s.truncations;
  });

  // Reduction in index order keeps the result independent of the thread count.
  NoiseSummary out;
  out.samples = spec.samples;
  // Shifted by the first sample so identical samples give std exactly 0.
  const double shift = f[0];
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += f[i] - shift;
    out.truncations += truncated[i];
  }
  const double mean_dev = sum / static_cast<double>(n);
  out.mean_f = shift + mean_dev;
  double sq = 0.0;
  for (double v : f) sq += (v - shift - mean_dev) * (v - shift - mean_dev);
  out.std_f = n > 1 ? std::sqrt(sq / static_cast<double>(n - 1)) : 0.0;
  if (keep_samples) out.per_sample = std::move(f);
  return out;
}

std::vector<NoiseRow> noise_series(const std::vector<int>& l_values, const NoiseSpec& spec,
                                   Exec exec) {
  std::vector<NoiseRow> rows;
  for (int l : l_values) {
    const ProtocolParams p = candidate_params(l, l, 0);
    NoiseRow row;
    row.l_prime = l;
    row.x_op = p.x;
    row.area_op = p.area;
    row.ideal_f = fidelity_single(p.area, p.x);
    PulseSequence seq;
    seq.pulses.push_back({p.area, structural_from_ratio(p.x), 0.0});
    row.summary = monte_carlo(seq, spec, exec);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace rydgate
