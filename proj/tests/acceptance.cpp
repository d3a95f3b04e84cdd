// Acceptance runner: one PASS/FAIL line per criterion, details underneath.
#include <cstdio>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "rydgate/error.hpp"
#include "rydgate/units.hpp"
#include "rydgate/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"rydgate acceptance criteria"};
  rydgate::VerifyOptions options;
  std::vector<std::string> injected;
  bool quiet = false;
  app.add_option("--criterion", options.criteria, "criterion id (repeatable)")->check(CLI::Range(1, 10));
  app.add_option("--seed", options.seed, "Monte Carlo / sampling seed");
  app.add_option("--threads", options.threads, "OpenMP threads")->check(CLI::NonNegativeNumber);
  app.add_option("--inject-tolerance", injected, "override NAME=VALUE (self-check of the harness)");
  app.add_flag("--quiet", quiet, "only the PASS/FAIL lines");
  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& item : injected) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw rydgate::InvalidArgument("expected NAME=VALUE, got '" + item + "'");
      options.overrides[item.substr(0, eq)] = rydgate::parse_real(item.substr(eq + 1));
    }
    bool all = true;
    for (int id : options.criteria.empty() ? std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10} : options.criteria) {
      const auto r = rydgate::run_criterion(id, options);
      std::cout << rydgate::format_criterion(r, !quiet) << std::flush;
      all = all && r.passed;
    }
    return all ? 0 : 2;
  } catch (const rydgate::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}
