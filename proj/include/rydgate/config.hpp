#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rydgate/beams.hpp"
#include "rydgate/grid.hpp"
#include "rydgate/noise.hpp"

namespace rydgate {

// Config files are YAML (JSON is accepted as a subset). Angles may be written
// as "6.162pi" strings or plain radians.
//
//   noise:
//     preset: standard        # optional base, then overrides
//     delta_I: 0.03
//     delta_R: 0.01           # or temperature_uK, or diffusion_D + t_gate + distance
//     delta_phi: 0.1pi
//     theta: 0.25
//     samples: 1000
//     seed: 7
//
//   grid:
//     axes:
//       - {name: A, min: 0, max: 20pi, points: 400}
//       - {name: x, min: 0.05, max: 1, points: 200}
//     fixed: {A1: 7pi}
//     constraint: aligned
//
//   geometry:
//     alpha: 0.7              # um^-2
//     positions: [[0, 0, 0], [1.0, 0, 0]]   # um; 1 to 3 components each
//     overlaps: [[1, 0.5], [0.5, 1]]       # instead of alpha + positions
//     omega0: 1.0
//     pulses:
//       - {x: 0.5}
//       - {vector: [0.6, 0.8]}

NoiseSpec load_noise_spec(const std::string& yaml_text);
GridSpec load_grid_spec(const std::string& yaml_text);

struct BeamConfig {
  BeamGeometry geometry;
  double omega0 = 1.0;
  std::vector<Eigen::VectorXd> targets;  // unit structural vectors, one per pulse
};

BeamConfig load_beam_config(const std::string& yaml_text);

std::string read_text_file(const std::string& path);

}  // namespace rydgate
