#include "rydgate/report.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

#include "rydgate/error.hpp"

#include "rydgate/fidelity.hpp"
#include "rydgate/units.hpp"

namespace rydgate {

using nlohmann::json;

namespace {

json complex_record(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

double in_pi(double radians) { return radians / kPi; }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

int parse_count(const std::string& text) {
  const double v = parse_real(text);
  if (v < 0 || v != std::floor(v) || v > 1e6) throw InvalidArgument("bad series entry '" + text + "'");
  return static_cast<int>(v);
}

}  // namespace

Pulse parse_pulse(const std::string& text) {
  std::optional<double> area, x, a, b;
  double phase = 0.0;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidArgument("pulse field '" + item + "' is not key=value");
    const std::string key = trim(item.substr(0, eq));
    const std::string value = trim(item.substr(eq + 1));
    if (key == "A") {
      area = parse_angle(value);
    } else if (key == "x") {
      x = parse_real(value);
    } else if (key == "a") {
      a = parse_real(value);
    } else if (key == "b") {
      b = parse_real(value);
    } else if (key == "phi") {
      phase = parse_angle(value);
    } else {
      throw InvalidArgument("unknown pulse field '" + key + "' (expected A, x, a, b, phi)");
    }
  }
  if (!area) throw InvalidArgument("pulse '" + text + "' needs A=");
  if (x && (a || b)) throw InvalidArgument("give either x= or a=,b= for a pulse, not both");
  if (a.has_value() != b.has_value()) throw InvalidArgument("a= and b= must be given together");
  const StructuralVector e = a ? StructuralVector::normalized(*a, *b) : structural_from_ratio(x.value_or(1.0));
  return Pulse{*area, e, phase};
}

std::vector<int> parse_series(const std::string& text) {
  std::string t = trim(text);
  if (!t.empty() && (t[0] == 'l' || t[0] == 'L')) t = t.substr(1);
  std::vector<int> out;
  const auto dots = t.find("..");
  if (dots != std::string::npos) {
    const int lo = parse_count(t.substr(0, dots));
    const int hi = parse_count(t.substr(dots + 2));
    if (hi < lo) throw InvalidArgument("empty series '" + text + "'");
    for (int l = lo; l <= hi; ++l) out.push_back(l);
    return out;
  }
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_count(trim(item)));
  if (out.empty()) throw InvalidArgument("empty series '" + text + "'");
  return out;
}

json protocol_record(const PulseSequence& seq) {
  const PropagatorSet u = compose(seq);
  const auto labels = classify_mechanism(seq);
  json pulses = json::array();
  for (const auto& p : seq.pulses) {
    json gpa_table;
    for (Subsystem s : kSubsystems) gpa_table[to_string(s)] = in_pi(gpa(p, s));
    pulses.push_back({{"area_pi", in_pi(p.area)},
                      {"a", p.structural.a()},
                      {"b", p.structural.b()},
                      {"phase_pi", in_pi(p.phase)},
                      {"gpa_pi", gpa_table}});
  }
  json diag, mech;
  for (std::size_t k = 0; k < 3; ++k) {
    const Subsystem s = kSubsystems[k];
    diag[to_string(s)] = complex_record(u.diagonal(s));
    mech[to_string(s)] = {{"label", to_string(labels[k].kind)}, {"w0", labels[k].w0}, {"w1", labels[k].w1}};
  }
  return {{"fidelity", fidelity(u)},
          {"accumulated_area_pi", in_pi(seq.accumulated_area())},
          {"u11", diag},
          {"mechanism", mech},
          {"pulses", pulses}};
}

std::string protocol_text(const PulseSequence& seq) {
  const PropagatorSet u = compose(seq);
  const auto labels = classify_mechanism(seq);
  std::ostringstream os;
  os << "fidelity: " << format_number(fidelity(u)) << "\n";
  os << "accumulated area: " << format_number(in_pi(seq.accumulated_area())) << " pi\n";
  os << "U11:";
  for (Subsystem s : kSubsystems) {
    const cplx z = u.diagonal(s);
    os << "  " << to_string(s) << "=" << format_number(z.real());
    if (z.imag() != 0.0) os << (z.imag() < 0 ? "" : "+") << format_number(z.imag()) << "i";
  }
  os << "\nGPA (pi units):\n";
  char cell[64];
  std::snprintf(cell, sizeof cell, "  %-6s%14s%14s%14s\n", "pulse", "V", "A", "B");
  os << cell;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    std::snprintf(cell, sizeof cell, "  %-6zu", k + 1);
    os << cell;
    for (Subsystem s : kSubsystems) {
      std::snprintf(cell, sizeof cell, "%14.8g", in_pi(gpa(seq.pulses[k], s)));
      os << cell;
    }
    os << "\n";
  }
  os << "mechanism:";
  for (std::size_t k = 0; k < 3; ++k) os << "  " << to_string(kSubsystems[k]) << "=" << to_string(labels[k].kind);
  os << "\n";
  return os.str();
}

json candidate_record(const ProtocolCandidate& c) {
  return {{"l", c.l},
          {"l_prime", c.l_prime},
          {"l_dprime", c.l_dprime},
          {"x_op", c.x_op},
          {"area_op_pi", in_pi(c.area_op)},
          {"f_ideal", c.f_ideal},
          {"x_refined", c.x_refined},
          {"area_refined_pi", in_pi(c.area_refined)},
          {"f_refined", c.f_refined},
          {"converged", c.converged}};
}

json family_record(const FamilySeed& s) {
  auto finite_or_null = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  return {{"family", to_string(s.family)},
          {"seed", {{"A1_pi", in_pi(s.area1)}, {"A2_pi", in_pi(s.area2)}, {"x1", s.x1}, {"x2", finite_or_null(s.x2)}}},
          {"f_seed", s.f_seed},
          {"refined",
           {{"A1_pi", in_pi(s.area1_refined)},
            {"A2_pi", in_pi(s.area2_refined)},
            {"x1", s.x1_refined},
            {"x2", finite_or_null(s.x2_refined)}}},
          {"f_refined", s.f_refined},
          {"converged", s.converged}};
}

json beam_record(const BeamAmplitudeSolution& s) {
  json fields = json::array(), target = json::array();
  for (Eigen::Index i = 0; i < s.fields.size(); ++i) fields.push_back(s.fields[i]);
  for (Eigen::Index i = 0; i < s.target.size(); ++i) target.push_back(s.target[i]);
  json out = {{"target", target},
              {"fields", fields},
              {"omega0", s.omega0},
              {"residual", s.residual},
              {"condition_number", s.condition_number}};
  if (s.fields.size() == 2) {
    out["field_ratio"] = s.fields[0] != 0.0 ? json(s.fields[1] / s.fields[0]) : json(nullptr);
  }
  return out;
}

json noise_spec_record(const NoiseSpec& spec) {
  json out = {{"delta_I", spec.delta_I},
              {"delta_A", delta_area(spec.delta_I)},
              {"delta_R", delta_R_effective(spec)},
              {"delta_phi_pi", in_pi(spec.delta_phi)},
              {"theta", spec.theta},
              {"samples", spec.samples},
              {"seed", spec.seed}};
  if (spec.temperature_uK) out["temperature_uK"] = *spec.temperature_uK;
  return out;
}

Metadata noise_metadata(const NoiseSpec& spec, const std::string& preset) {
  return {{"version", kVersion},
          {"preset", preset},
          {"seed", std::to_string(spec.seed)},
          {"samples", std::to_string(spec.samples)},
          {"delta_I", format_number(spec.delta_I)},
          {"delta_R", format_number(delta_R_effective(spec))},
          {"delta_phi_pi", format_number(in_pi(spec.delta_phi))},
          {"theta", format_number(spec.theta)},
          {"ratio_perturbation", "x perturbed then renormalized; intensity draw shared with area"}};
}

std::string write_noise_csv(const std::vector<NoiseRow>& rows, const Metadata& metadata) {
  std::ostringstream os;
  for (const auto& [key, value] : metadata) os << "# " << key << ": " << value << "\n";
  os << "l_prime,ideal_f,mean_f,std_f,truncations\n";
  for (const auto& r : rows) {
    os << r.l_prime << "," << format_number(r.ideal_f) << "," << format_number(r.summary.mean_f) << ","
       << format_number(r.summary.std_f) << "," << r.summary.truncations << "\n";
  }
  return os.str();
}

}  // namespace rydgate
