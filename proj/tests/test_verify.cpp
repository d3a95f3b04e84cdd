#include <doctest.h>

#include "rydgate/error.hpp"
#include "rydgate/verify.hpp"

using namespace rydgate;

TEST_CASE("tolerance table") {
  const auto t = default_tolerances();
  CHECK(t.at("c1.target") == 0.804);
  CHECK(t.at("c1.tol") == 0.003);
  CHECK(t.at("c3.lo") == 0.990);
  CHECK(t.at("c3.hi") == 0.995);
  CHECK(t.at("c4.error") == 0.0204);
  CHECK(t.at("c4.tol") == 0.0005);
  CHECK(t.at("c5.dx") == 0.02);
  CHECK(t.at("c6.tol") == 1e-12);
  CHECK(t.at("c8.std") == 0.17);
  CHECK(t.at("c8.std_tol") == 0.05);
  CHECK(t.at("c8.ultra_infidelity") == 0.012);
  CHECK(t.at("c9.tol") == 1e-6);
}

TEST_CASE("criteria run and can be tampered with") {
  VerifyOptions o;
  CHECK(run_criterion(1, o).passed);
  CHECK(run_criterion(6, o).passed);
  o.overrides["c1.tol"] = 0.0;
  CHECK_FALSE(run_criterion(1, o).passed);
  o.overrides = {{"c6.tol", -1.0}};
  CHECK_FALSE(run_criterion(6, o).passed);
  o.overrides = {{"no.such", 1.0}};
  CHECK_THROWS_AS(run_criterion(1, o), InvalidArgument);
  CHECK_THROWS_AS(run_criterion(11, VerifyOptions{}), InvalidArgument);
}

TEST_CASE("seed changes keep the statistical verdicts") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    VerifyOptions o;
    o.seed = seed;
    const auto r = run_criterion(8, o);
    for (const auto& c : r.checks) {
      if (c.name == "standard (6,6,0) std_f" || c.name.rfind("intensity-only", 0) == 0) CHECK(c.passed);
    }
  }
}

TEST_CASE("report formatting") {
  const auto r = run_criterion(2, VerifyOptions{});
  const std::string line = format_criterion(r, false);
  CHECK(line.rfind("[PASS] criterion  2:", 0) == 0);
  CHECK(criterion_record(r).at("passed") == true);
}
