#include <doctest.h>

#include <algorithm>

#include "rydgate/dioph_opt.hpp"
#include "rydgate/error.hpp"
#include "rydgate/fidelity.hpp"

using namespace rydgate;

TEST_CASE("candidate parameters") {
  const auto p0 = candidate_params(0, 0, 0);
  CHECK(p0.x == 1.0);
  CHECK(p0.area == doctest::Approx((1 + std::sqrt(2.0)) * kPi));
  const auto p1 = candidate_params(1, 1, 0);
  CHECK(p1.x == doctest::Approx(1.0 / 3.0));
  CHECK(p1.area / kPi == doctest::Approx(3 + std::sqrt(10.0)));
  CHECK(candidate_params(3, 2, 2).area / kPi == doctest::Approx(7 + 5 * std::sqrt(2.0)));
  CHECK_THROWS_AS(candidate_params(0, 1, 0), InvalidArgument);
  CHECK_THROWS_AS(candidate_params(1, 0, 1), InvalidArgument);
  CHECK_THROWS_AS(candidate_params(-1, -1, -1), InvalidArgument);
}

TEST_CASE("refine_local agrees with a brute-force grid of the same box") {
  const auto p = candidate_params(0, 0, 0);
  const RefineResult r = refine_local(p.x, p.area);
  CHECK(r.converged);
  const RefineRadius box;
  const int n = 2000;
  double grid_best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = std::max(0.0, p.x - box.x) + (p.x + box.x - std::max(0.0, p.x - box.x)) * i / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double a = p.area - box.area + 2 * box.area * j / (n - 1);
      grid_best = std::max(grid_best, fidelity_single(a, x));
    }
  }
  CHECK(r.fidelity >= grid_best - 1e-7);
  CHECK(r.fidelity <= grid_best + 1e-5);
  CHECK(r.fidelity == doctest::Approx(0.804).epsilon(0.003 / 0.804));
}

TEST_CASE("refined optimum never loses to its seed") {
  for (int l = 0; l < 5; ++l) {
    for (int lp = 0; lp <= l; ++lp) {
      const auto p = candidate_params(l, lp, 0);
      CHECK(refine_local(p.x, p.area).fidelity >= fidelity_single(p.area, p.x));
    }
  }
}

TEST_CASE("candidate enumeration") {
  SUBCASE("below 2.5 pi only (0,0,0)") {
    const auto list = enumerate_candidates(2.5 * kPi);
    REQUIRE(list.size() == 1);
    CHECK(list[0].l == 0);
  }
  SUBCASE("7 pi contains (1,1,0) near 0.968") {
    const auto list = enumerate_candidates(7 * kPi);
    const auto it = std::find_if(list.begin(), list.end(), [](const auto& c) {
      return c.l == 1 && c.l_prime == 1 && c.l_dprime == 0;
    });
    REQUIRE(it != list.end());
    CHECK(it - list.begin() < 3);
    CHECK(it->f_refined == doctest::Approx(0.968).epsilon(0.003));
  }
  SUBCASE("27 pi contains (6,6,0) with f_ideal near 0.998") {
    const auto list = enumerate_candidates(27 * kPi);
    const auto it = std::find_if(list.begin(), list.end(), [](const auto& c) {
      return c.l == 6 && c.l_prime == 6 && c.l_dprime == 0;
    });
    REQUIRE(it != list.end());
    CHECK(it->f_ideal == doctest::Approx(0.998).epsilon(0.002));
  }
  SUBCASE("15 pi top lies in the 14 pi window and (3,2,2) is present") {
    const auto list = enumerate_candidates(15 * kPi);
    CHECK(list.front().f_refined >= 0.990);
    CHECK(list.front().f_refined <= 0.995);
    CHECK(std::any_of(list.begin(), list.end(), [](const auto& c) {
      return c.l == 3 && c.l_prime == 2 && c.l_dprime == 2 && std::abs(c.x_op - 1.0) < 1e-12;
    }));
  }
  SUBCASE("sorted, deduplicated, serial == parallel") {
    const auto par = enumerate_candidates(12 * kPi, Exec::Parallel);
    const auto ser = enumerate_candidates(12 * kPi, Exec::Serial);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
      CHECK(par[i].f_refined == ser[i].f_refined);
      CHECK(par[i].l == ser[i].l);
      if (i > 0) CHECK(par[i - 1].f_refined >= par[i].f_refined);
      for (std::size_t j = 0; j < i; ++j) {
        const bool same = std::abs(par[i].x_refined - par[j].x_refined) < kDedupTolerance &&
                          std::abs(par[i].area_refined - par[j].area_refined) < kDedupTolerance;
        CHECK_FALSE(same);
      }
    }
  }
  CHECK_THROWS_AS(enumerate_candidates(2 * kPi), InvalidArgument);
}

TEST_CASE("ideal infidelity of (l, l, 0) decreases with l") {
  double previous = 1.0;
  for (int l = 0; l <= 8; ++l) {
    const auto p = candidate_params(l, l, 0);
    const double infidelity = 1.0 - fidelity_single(p.area, p.x);
    CHECK(infidelity <= previous + 1e-15);
    previous = infidelity;
  }
}

TEST_CASE("dotted-line law b A = 2 pi for (l, l, 0), l >= 2") {
  for (int l = 2; l <= 12; ++l) {
    const auto p = candidate_params(l, l, 0);
    const double b = p.x / std::sqrt(1 + p.x * p.x);
    CHECK(std::abs(b * p.area - 2 * kPi) <= 0.05 * kPi);
  }
  const auto p0 = candidate_params(0, 0, 0);
  CHECK(std::abs(p0.area / std::sqrt(2.0) - 2 * kPi) > 0.05 * kPi);
  const auto p1 = candidate_params(1, 1, 0);
  CHECK(p1.area / std::sqrt(10.0) / kPi == doctest::Approx(1.9487).epsilon(1e-4));
}

TEST_CASE("diophantine search") {
  const auto s = diophantine_search(2, 20);
  CHECK(s.exact_solutions == 0);
  const auto it = std::find_if(s.best.begin(), s.best.end(), [](const auto& t) {
    return t.values == std::vector<std::int64_t>{10, 10, 14};
  });
  REQUIRE(it != s.best.end());
  CHECK(it->relative_error == doctest::Approx(4.0 / 196.0));
  CHECK(std::is_sorted(s.best.begin(), s.best.end(),
                       [](const auto& l, const auto& r) { return l.relative_error < r.relative_error; }));

  SUBCASE("brute force oracle") {
    const std::int64_t bound = 62;
    std::vector<double> errors;
    for (std::int64_t m = 2; m <= bound; m += 4) {
      for (std::int64_t n = m; n <= bound; n += 4) {
        double best = 1e300;
        for (std::int64_t q = 2; q <= bound; q += 4) {
          best = std::min(best, std::abs(double(q * q - m * m - n * n)) / double(q * q));
        }
        errors.push_back(best);
      }
    }
    std::sort(errors.begin(), errors.end());
    const auto found = diophantine_search(2, bound, 12);
    REQUIRE(found.best.size() == 12);
    for (std::size_t k = 0; k < 12; ++k) CHECK(found.best[k].relative_error == doctest::Approx(errors[k]));
  }
  SUBCASE("serial == parallel") {
    const auto a = diophantine_search(3, 120, 20, Exec::Serial);
    const auto b = diophantine_search(3, 120, 20, Exec::Parallel);
    REQUIRE(a.best.size() == b.best.size());
    for (std::size_t k = 0; k < a.best.size(); ++k) CHECK(a.best[k].values == b.best[k].values);
    CHECK(a.scanned == b.scanned);
    CHECK(a.exact_solutions == 0);
  }
  CHECK(diophantine_search(2, 2000, 1).exact_solutions == 0);
  CHECK(congruence_certificate(2));
  CHECK(congruence_certificate(3));
  CHECK_THROWS_AS(diophantine_search(4, 20), InvalidArgument);
}

TEST_CASE("two-pulse families") {
  SUBCASE("aligned seeds reduce to single pulses") {
    FamilyRequest req;
    req.family = Family::Aligned;
    req.budget = 8 * kPi;
    const auto seeds = two_pulse_families(req);
    REQUIRE_FALSE(seeds.empty());
    for (const auto& s : seeds) {
      CHECK(s.f_seed == doctest::Approx(fidelity_single(s.area1 + s.area2, s.x1)).epsilon(1e-12));
      CHECK(std::abs(s.area1) + std::abs(s.area2) <= req.budget + 1e-9);
      CHECK(s.f_refined >= s.f_seed - 1e-12);
    }
  }
  SUBCASE("checkered seeds keep U^V = -1") {
    FamilyRequest req;
    req.family = Family::Checkered;
    req.budget = 10 * kPi;
    for (const auto& s : two_pulse_families(req)) {
      const auto e1 = structural_from_ratio(s.x1);
      const auto e2 = family_second_vector(Family::Orthogonal, e1, s.x2);
      (void)e2;
      CHECK(s.f_seed >= 0.0);
    }
  }
  SUBCASE("held A1 and x1 stay fixed") {
    FamilyRequest req;
    req.family = Family::Orthogonal;
    req.budget = 12 * kPi;
    req.area1 = 2 * kPi;
    req.x1 = 0.25;
    for (const auto& s : two_pulse_families(req)) {
      CHECK(s.area1_refined == 2 * kPi);
      CHECK(s.x1_refined == 0.25);
    }
  }
  SUBCASE("serial == parallel") {
    FamilyRequest req;
    req.family = Family::AntiAligned;
    req.budget = 6 * kPi;
    const auto a = two_pulse_families(req, Exec::Serial);
    const auto b = two_pulse_families(req, Exec::Parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].f_refined == b[i].f_refined);
  }
  CHECK(parse_family("x2-neg-x1") == Family::AntiAlignedRatio);
  CHECK(std::string(to_string(Family::AntiAligned)) == "anti-aligned");
  CHECK_THROWS_AS(parse_family("zigzag"), InvalidArgument);
}
