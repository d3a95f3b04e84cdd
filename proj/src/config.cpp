#include "rydgate/config.hpp"

#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "rydgate/error.hpp"
#include "rydgate/units.hpp"

namespace rydgate {

namespace {

YAML::Node parse_root(const std::string& text) {
  try {
    return YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw InvalidArgument(std::string("config parse error: ") + e.what());
  }
}

YAML::Node section(const YAML::Node& root, const char* name) {
  if (root.IsMap() && root[name]) return root[name];
  return root;
}

double real(const YAML::Node& n, const std::string& key) {
  if (!n.IsScalar()) throw InvalidArgument("'" + key + "' must be a number");
  return parse_real(n.Scalar());
}

double angle(const YAML::Node& n, const std::string& key) {
  if (!n.IsScalar()) throw InvalidArgument("'" + key + "' must be an angle");
  return parse_angle(n.Scalar());
}

bool is_angle_name(const std::string& name) { return !name.empty() && name[0] == 'A'; }

}  // namespace

static NoiseSpec load_noise_spec_unguarded(const std::string& yaml_text) {
  const YAML::Node n = section(parse_root(yaml_text), "noise");
  if (!n.IsMap()) throw InvalidArgument("noise config must be a mapping");
  NoiseSpec spec = n["preset"] ? noise_preset(n["preset"].as<std::string>()) : NoiseSpec{};
  for (const auto& kv : n) {
    const auto key = kv.first.as<std::string>();
    const YAML::Node& v = kv.second;
    if (key == "preset") continue;
    if (key == "delta_I") {
      spec.delta_I = real(v, key);
    } else if (key == "delta_R") {
      spec.delta_R = real(v, key);
      spec.temperature_uK.reset();
    } else if (key == "delta_phi") {
      spec.delta_phi = angle(v, key);
    } else if (key == "temperature_uK") {
      spec.temperature_uK = real(v, key);
      spec.delta_R.reset();
    } else if (key == "reference_delta_R") {
      spec.reference_delta_R = real(v, key);
    } else if (key == "reference_temperature_uK") {
      spec.reference_temperature_uK = real(v, key);
    } else if (key == "diffusion_D") {
      spec.diffusion_D = real(v, key);
    } else if (key == "t_gate") {
      spec.t_gate = real(v, key);
    } else if (key == "distance") {
      spec.distance = real(v, key);
    } else if (key == "theta") {
      spec.theta = real(v, key);
    } else if (key == "samples") {
      spec.samples = v.as<int>();
    } else if (key == "seed") {
      spec.seed = v.as<std::uint64_t>();
    } else {
      throw InvalidArgument("unknown noise key '" + key + "'");
    }
  }
  spec.validate();
  return spec;
}

static GridSpec load_grid_spec_unguarded(const std::string& yaml_text) {
  const YAML::Node n = section(parse_root(yaml_text), "grid");
  if (!n.IsMap() || !n["axes"] || !n["axes"].IsSequence()) {
    throw InvalidArgument("grid config needs an 'axes' list");
  }
  GridSpec spec;
  for (const auto& ax : n["axes"]) {
    AxisSpec a;
    a.name = ax["name"].as<std::string>();
    const bool ang = is_angle_name(a.name);
    a.min = ang ? angle(ax["min"], "min") : real(ax["min"], "min");
    a.max = ang ? angle(ax["max"], "max") : real(ax["max"], "max");
    a.points = ax["points"].as<int>();
    spec.axes.push_back(a);
  }
  if (n["fixed"]) {
    for (const auto& kv : n["fixed"]) {
      const auto name = kv.first.as<std::string>();
      spec.fixed[name] = is_angle_name(name) ? angle(kv.second, name) : real(kv.second, name);
    }
  }
  if (n["constraint"]) spec.constraint = parse_constraint(n["constraint"].as<std::string>());
  spec.validate();
  return spec;
}

static BeamConfig load_beam_config_unguarded(const std::string& yaml_text) {
  const YAML::Node n = section(parse_root(yaml_text), "geometry");
  if (!n.IsMap()) throw InvalidArgument("geometry config must be a mapping");

  BeamConfig cfg;
  if (n["overlaps"]) {
    const YAML::Node t = n["overlaps"];
    const auto size = static_cast<Eigen::Index>(t.size());
    Eigen::MatrixXd m(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
      if (static_cast<Eigen::Index>(t[i].size()) != size) throw InvalidArgument("overlap table must be square");
      for (Eigen::Index j = 0; j < size; ++j) m(i, j) = real(t[i][j], "overlaps");
    }
    cfg.geometry = BeamGeometry::from_overlaps(m);
  } else {
    if (!n["alpha"] || !n["positions"]) {
      throw InvalidArgument("geometry needs alpha + positions or an overlap table");
    }
    std::vector<Eigen::Vector3d> positions;
    for (const auto& p : n["positions"]) {
      Eigen::Vector3d r = Eigen::Vector3d::Zero();
      if (p.IsScalar()) {
        r[0] = real(p, "positions");
      } else {
        if (p.size() < 1 || p.size() > 3) throw InvalidArgument("positions need 1 to 3 coordinates");
        for (std::size_t k = 0; k < p.size(); ++k) r[static_cast<Eigen::Index>(k)] = real(p[k], "positions");
      }
      positions.push_back(r);
    }
    cfg.geometry = BeamGeometry::gaussian(real(n["alpha"], "alpha"), std::move(positions));
  }
  if (n["omega0"]) cfg.omega0 = real(n["omega0"], "omega0");

  const auto qubits = static_cast<Eigen::Index>(cfg.geometry.size());
  if (n["pulses"]) {
    for (const auto& p : n["pulses"]) {
      Eigen::VectorXd e(qubits);
      if (p["x"]) {
        if (qubits != 2) throw InvalidArgument("ratio targets need exactly two qubits; use 'vector'");
        const StructuralVector s = structural_from_ratio(real(p["x"], "x"));
        e << s.a(), s.b();
      } else if (p["vector"]) {
        if (static_cast<Eigen::Index>(p["vector"].size()) != qubits) {
          throw InvalidArgument("target vector length must match the qubit count");
        }
        for (Eigen::Index k = 0; k < qubits; ++k) e[k] = real(p["vector"][static_cast<std::size_t>(k)], "vector");
        const double norm = e.norm();
        if (norm == 0.0) throw InvalidArgument("target vector must be nonzero");
        e /= norm;
      } else {
        throw InvalidArgument("each pulse needs 'x' or 'vector'");
      }
      cfg.targets.push_back(e);
    }
  }
  return cfg;
}

namespace {

template <class F>
auto guarded(F&& load) {
  try {
    return load();
  } catch (const YAML::Exception& e) {
    throw InvalidArgument(std::string("config error: ") + e.what());
  }
}

}  // namespace

NoiseSpec load_noise_spec(const std::string& yaml_text) {
  return guarded([&] { return load_noise_spec_unguarded(yaml_text); });
}

GridSpec load_grid_spec(const std::string& yaml_text) {
  return guarded([&] { return load_grid_spec_unguarded(yaml_text); });
}

BeamConfig load_beam_config(const std::string& yaml_text) {
  return guarded([&] { return load_beam_config_unguarded(yaml_text); });
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace rydgate
