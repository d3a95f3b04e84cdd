#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace rydgate {

// Named tolerances and bounds used by the acceptance checks. Overridable so a
// deliberately wrong value can demonstrate that a check goes red.
using ToleranceTable = std::map<std::string, double>;

ToleranceTable default_tolerances();

struct VerifyOptions {
  std::uint64_t seed = 20250101;
  int threads = 0;               // 0: leave the OpenMP default
  ToleranceTable overrides;      // applied on top of default_tolerances()
  std::vector<int> criteria;     // empty: all
};

struct CheckLine {
  std::string name;
  bool passed = true;
  bool informational = false;    // reported only, never fails the criterion
  std::string expected;
  std::string actual;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = true;
  double seconds = 0.0;
  std::vector<CheckLine> checks;
};

inline constexpr int kCriterionCount = 10;

// Throws InvalidArgument for an unknown id or tolerance name.
CriterionResult run_criterion(int id, const VerifyOptions& options);
std::vector<CriterionResult> run_acceptance(const VerifyOptions& options);

std::string format_criterion(const CriterionResult& r, bool verbose);
nlohmann::json criterion_record(const CriterionResult& r);

}  // namespace rydgate
