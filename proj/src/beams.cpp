#include "rydgate/beams.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "rydgate/error.hpp"

namespace rydgate {

namespace {

constexpr double kUnitTolerance = 1e-10;
constexpr double kPoleTolerance = 1e-12;

std::string pair_name(std::size_t i, std::size_t j) {
  return "qubits " + std::to_string(i) + " and " + std::to_string(j);
}

}  // namespace

double overlap_theta(double alpha, double distance) {
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  if (!(distance >= 0.0)) throw InvalidArgument("distance must be non-negative");
  return std::exp(-alpha * distance * distance);
}

BeamGeometry BeamGeometry::gaussian(double alpha, std::vector<Eigen::Vector3d> positions) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be positive");
  BeamGeometry g;
  g.alpha_ = alpha;
  g.positions_ = std::move(positions);
  return g;
}

BeamGeometry BeamGeometry::from_overlaps(Eigen::MatrixXd overlaps) {
  if (overlaps.rows() != overlaps.cols()) throw InvalidArgument("overlap table must be square");
  if (!overlaps.isApprox(overlaps.transpose(), 1e-14)) {
    throw InvalidArgument("overlap table must be symmetric");
  }
  for (Eigen::Index i = 0; i < overlaps.rows(); ++i) {
    if (overlaps(i, i) != 1.0) throw InvalidArgument("overlap table diagonal must be exactly 1");
  }
  BeamGeometry g;
  g.table_ = std::move(overlaps);
  return g;
}

std::size_t BeamGeometry::size() const {
  return table_ ? static_cast<std::size_t>(table_->rows()) : positions_.size();
}

double BeamGeometry::overlap(std::size_t i, std::size_t j) const {
  if (table_) return (*table_)(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  if (i == j) return 1.0;
  return overlap_theta(alpha_, (positions_[i] - positions_[j]).norm());
}

OverlapMatrix build_overlap_matrix(const BeamGeometry& geometry) {
  const std::size_t n = geometry.size();
  if (n < 2) throw InvalidArgument("need at least two qubits");
  if (!geometry.has_table()) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if ((geometry.positions()[i] - geometry.positions()[j]).norm() == 0.0) {
          throw InvalidArgument("coincident positions for " + pair_name(i, j));
        }
      }
    }
  }

  OverlapMatrix out;
  out.s.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::size_t worst_i = 0, worst_j = 1;
  double worst = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double t = geometry.overlap(i, j);
      out.s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = t;
      if (i < j && std::abs(t) > worst) {
        worst = std::abs(t);
        worst_i = i;
        worst_j = j;
      }
    }
  }

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(out.s, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd mags = eig.eigenvalues().cwiseAbs();
  const double smallest = mags.minCoeff();
  out.condition_number = smallest > 0.0 ? mags.maxCoeff() / smallest : std::numeric_limits<double>::infinity();
  if (!(out.condition_number <= kMaxConditionNumber)) {
    std::ostringstream msg;
    msg << "overlap matrix is singular or ill-conditioned (condition number "
        << out.condition_number << "); largest overlap " << worst << " between "
        << pair_name(worst_i, worst_j);
    throw NumericalError(msg.str());
  }
  return out;
}

BeamAmplitudeSolution solve_amplitudes(const BeamGeometry& geometry, const Eigen::VectorXd& target,
                                       double omega0) {
  const OverlapMatrix m = build_overlap_matrix(geometry);
  if (target.size() != m.s.rows()) {
    throw InvalidArgument("target vector has " + std::to_string(target.size()) +
                          " components for " + std::to_string(m.s.rows()) + " qubits");
  }
  if (std::abs(target.norm() - 1.0) > kUnitTolerance) {
    throw InvalidArgument("target structural vector must have unit norm");
  }
  BeamAmplitudeSolution out;
  out.target = target;
  out.omega0 = omega0;
  out.condition_number = m.condition_number;
  out.fields = m.s.partialPivLu().solve(omega0 * target);
  out.residual = (m.s * out.fields - omega0 * target).norm();
  if (!(out.residual <= 1e-10 * std::max(1.0, std::abs(omega0)))) {
    throw NumericalError("amplitude solve residual " + std::to_string(out.residual) +
                         " exceeds 1e-10 omega0");
  }
  return out;
}

Eigen::Vector2d solve_amplitudes_two_qubit(double theta, const StructuralVector& e, double omega0) {
  const double det = 1.0 - theta * theta;
  if (std::abs(det) < kPoleTolerance) throw NumericalError("two-qubit overlap matrix is singular");
  const double scale = omega0 / det;
  return {scale * (e.a() - theta * e.b()), scale * (e.b() - theta * e.a())};
}

double amplitude_ratio(double x, double theta) {
  const double denom = 1.0 - theta * x;
  if (std::abs(denom) < kPoleTolerance) {
    throw InvalidArgument("amplitude ratio has a pole at theta x = 1");
  }
  return (x - theta) / denom;
}

}  // namespace rydgate
