#pragma once

#include <functional>
#include <vector>

namespace rydgate {

// Box-constrained Nelder-Mead maximizer. Points outside [lower, upper] score
// -infinity, so the simplex never leaves the box.
struct SimplexOptions {
  double parameter_tolerance = 1e-8;  // stop when every vertex is this close to the best
  int max_iterations = 500;
};

struct SimplexResult {
  std::vector<double> point;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;  // false: iteration cap hit, point is best-so-far
};

SimplexResult maximize_simplex(const std::function<double(const std::vector<double>&)>& objective,
                               std::vector<double> start, std::vector<double> lower,
                               std::vector<double> upper, const SimplexOptions& options = {});

}  // namespace rydgate
