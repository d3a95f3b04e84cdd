#include "rydgate/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rydgate/error.hpp"

namespace rydgate {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;
// Initial edge length as a fraction of the box half-width.
constexpr double kInitialStep = 0.25;

}  // namespace

SimplexResult maximize_simplex(const std::function<double(const std::vector<double>&)>& objective,
                               std::vector<double> start, std::vector<double> lower,
                               std::vector<double> upper, const SimplexOptions& options) {
  const std::size_t n = start.size();
  if (n == 0 || lower.size() != n || upper.size() != n) {
    throw InvalidArgument("simplex: start and bounds must have equal, nonzero dimension");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(lower[i] <= start[i] && start[i] <= upper[i])) {
      throw InvalidArgument("simplex: start point outside the box");
    }
  }

  auto score = [&](const std::vector<double>& p) {
    for (std::size_t i = 0; i < n; ++i) {
      if (p[i] < lower[i] || p[i] > upper[i]) return -std::numeric_limits<double>::infinity();
    }
    return objective(p);
  };

  std::vector<std::vector<double>> vertex(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) {
    const double half_width = 0.5 * (upper[i] - lower[i]);
    double step = kInitialStep * half_width;
    if (step == 0.0) continue;
    // Step toward the side with more room.
    if (upper[i] - start[i] < start[i] - lower[i]) step = -step;
    vertex[i + 1][i] += step;
  }
  std::vector<double> value(n + 1);
  for (std::size_t i = 0; i <= n; ++i) value[i] = score(vertex[i]);

  std::vector<std::size_t> order(n + 1);
  SimplexResult result;
  for (int iter = 0;; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return value[l] > value[r]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[n - 1];

    double spread = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        spread = std::max(spread, std::abs(vertex[k][i] - vertex[best][i]));
      }
    }
    result.iterations = iter;
    if (spread <= options.parameter_tolerance) {
      result.converged = true;
      break;
    }
    if (iter >= options.max_iterations) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == worst) continue;
      for (std::size_t i = 0; i < n; ++i) centroid[i] += vertex[k][i] / static_cast<double>(n);
    }
    auto along = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t i = 0; i < n; ++i) p[i] = centroid[i] + t * (centroid[i] - vertex[worst][i]);
      return p;
    };

    const auto reflected = along(kReflect);
    const double f_reflected = score(reflected);
    if (f_reflected > value[best]) {
      const auto expanded = along(kExpand);
      const double f_expanded = score(expanded);
      if (f_expanded > f_reflected) {
        vertex[worst] = expanded;
        value[worst] = f_expanded;
      } else {
        vertex[worst] = reflected;
        value[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected > value[second_worst]) {
      vertex[worst] = reflected;
      value[worst] = f_reflected;
      continue;
    }
    const bool outside = f_reflected > value[worst];
    const auto contracted = along(outside ? kContract : -kContract);
    const double f_contracted = score(contracted);
    if (outside ? f_contracted >= f_reflected : f_contracted > value[worst]) {
      vertex[worst] = contracted;
      value[worst] = f_contracted;
      continue;
    }
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == best) continue;
      for (std::size_t i = 0; i < n; ++i) {
        vertex[k][i] = vertex[best][i] + kShrink * (vertex[k][i] - vertex[best][i]);
      }
      value[k] = score(vertex[k]);
    }
  }

  const auto best_it = std::max_element(value.begin(), value.end());
  const auto best = static_cast<std::size_t>(best_it - value.begin());
  result.point = vertex[best];
  result.value = value[best];
  return result;
}

}  // namespace rydgate
