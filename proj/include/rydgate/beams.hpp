#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "rydgate/gate_core.hpp"

namespace rydgate {

// exp(-alpha R^2): amplitude of a beam centred on one qubit, seen at distance R.
double overlap_theta(double alpha, double distance);

// Qubit sites plus either a Gaussian waist parameter or an explicit pairwise
// overlap table (any beam profile).
class BeamGeometry {
 public:
  static BeamGeometry gaussian(double alpha, std::vector<Eigen::Vector3d> positions);
  static BeamGeometry from_overlaps(Eigen::MatrixXd overlaps);

  std::size_t size() const;
  double overlap(std::size_t i, std::size_t j) const;

  double alpha() const { return alpha_; }
  const std::vector<Eigen::Vector3d>& positions() const { return positions_; }
  bool has_table() const { return table_.has_value(); }

 private:
  double alpha_ = 0.0;
  std::vector<Eigen::Vector3d> positions_;
  std::optional<Eigen::MatrixXd> table_;
};

inline constexpr double kMaxConditionNumber = 1e12;

struct OverlapMatrix {
  Eigen::MatrixXd s;
  double condition_number = 1.0;
};

// Symmetric unit-diagonal overlap matrix. Throws InvalidArgument for fewer than
// two qubits or coincident sites, NumericalError when the condition number
// exceeds 1e12; both messages name the offending pair.
OverlapMatrix build_overlap_matrix(const BeamGeometry& geometry);

struct BeamAmplitudeSolution {
  Eigen::VectorXd fields;  // peak Rabi frequency of the beam centred on each qubit
  Eigen::VectorXd target;  // structural vector to realize
  double omega0 = 1.0;
  double residual = 0.0;   // ||S fields - omega0 target||
  double condition_number = 1.0;
};

// fields = omega0 S^-1 e via a pivoted LU solve. |e| must be 1 within 1e-10.
BeamAmplitudeSolution solve_amplitudes(const BeamGeometry& geometry, const Eigen::VectorXd& target,
                                       double omega0);

// Closed-form two-qubit inverse: omega0 / (1 - theta^2) [[1, -theta], [-theta, 1]] e.
Eigen::Vector2d solve_amplitudes_two_qubit(double theta, const StructuralVector& e, double omega0);

// Peak-amplitude ratio (x - theta) / (1 - theta x) of the beam on qubit b to the one on a.
double amplitude_ratio(double x, double theta);

}  // namespace rydgate
