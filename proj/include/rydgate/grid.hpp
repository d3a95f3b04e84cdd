#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rydgate/kernels.hpp"

namespace rydgate {

// Axis names: A, A1, A2, x, x1, x2 (A aliases A1, x aliases x1).
struct AxisSpec {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  int points = 2;

  std::vector<double> values() const;
};

enum class FamilyConstraint { None, Aligned, AntiAligned, Orthogonal, X2NegX1 };

FamilyConstraint parse_constraint(const std::string& tag);
const char* to_string(FamilyConstraint c);

// One or two swept axes plus fixed bindings. A sweep is two-pulse when A2 is
// swept or bound; x2 then comes from the constraint, or must be given when the
// constraint is None. Otherwise it is a single pulse (A1, x1).
struct GridSpec {
  std::vector<AxisSpec> axes;
  std::map<std::string, double> fixed;
  FamilyConstraint constraint = FamilyConstraint::None;

  void validate() const;
  // Fidelity at one point; `swept` holds one value per axis.
  double evaluate(const std::vector<double>& swept) const;
};

struct GridResult {
  std::vector<std::string> axis_names;
  std::vector<std::vector<double>> axis_values;
  std::vector<double> values;                    // row-major, first axis outer
  std::map<std::string, std::string> metadata;   // emitted as "# key: value" lines

  double at(std::size_t i, std::size_t j) const { return values[i * axis_values[1].size() + j]; }
};

GridResult evaluate_grid(const GridSpec& spec, Exec exec = Exec::Parallel);

// CSV: "# key: value" metadata lines, a header of axis names then
// "fidelity", one row per point in row-major order, numbers as %.12g.
std::string write_grid_csv(const GridResult& grid);
GridResult parse_grid_csv(const std::string& text);

// Companion overlay A = scale sqrt(1 + x^2) / x sampled on the x axis; columns x,A.
std::string overlay_curve_csv(const AxisSpec& x_axis, double scale);

// Ridge along a curve area = curve(x) in a grid with an area axis and a ratio
// axis: for each x sample, the best value within +-band cells of the curve.
// Returns the x positions of interior local maxima of that ridge.
std::vector<double> ridge_maxima(const GridResult& grid, std::size_t area_axis, std::size_t ratio_axis,
                                 const std::function<double(double)>& curve, int band);

}  // namespace rydgate
