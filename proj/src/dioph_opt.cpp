#include "rydgate/dioph_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <tuple>

#include "rydgate/error.hpp"
#include "rydgate/fidelity.hpp"

namespace rydgate {

ProtocolParams candidate_params(int l, int l_prime, int l_dprime) {
  if (!(l >= l_prime && l_prime >= l_dprime && l_dprime >= 0)) {
    throw InvalidArgument("candidate triple must satisfy l >= l' >= l'' >= 0");
  }
  const double odd_a = 2.0 * l_prime + 1.0;
  const double odd_b = 2.0 * l_dprime + 1.0;
  ProtocolParams p;
  p.x = (4.0 * l_dprime + 2.0) / (4.0 * l_prime + 2.0);
  p.area = (2.0 * l + 1.0 + std::hypot(odd_a, odd_b)) * kPi;
  return p;
}

RefineResult refine_local(double x0, double area0, const RefineRadius& radius,
                          const SimplexOptions& options) {
  if (!std::isfinite(x0) || !std::isfinite(area0)) {
    throw InvalidArgument("refine_local needs a finite start point");
  }
  if (!(radius.x >= 0.0 && radius.area >= 0.0)) {
    throw InvalidArgument("refine_local radius must be non-negative");
  }
  double x_lo = x0 - radius.x;
  if (x0 > 0.0) x_lo = std::max(x_lo, 0.0);
  const auto objective = [](const std::vector<double>& p) { return fidelity_single(p[1], p[0]); };
  const SimplexResult r = maximize_simplex(objective, {x0, area0}, {x_lo, area0 - radius.area},
                                           {x0 + radius.x, area0 + radius.area}, options);
  RefineResult out;
  out.x = r.point[0];
  out.area = r.point[1];
  out.fidelity = r.value;
  out.iterations = r.iterations;
  out.converged = r.converged;
  return out;
}

std::vector<ProtocolCandidate> enumerate_candidates(double max_area, Exec exec) {
  if (!(max_area > 2.0 * kPi)) throw InvalidArgument("max_area must exceed 2 pi");

  std::vector<ProtocolCandidate> all;
  for (int l = 0; candidate_params(l, 0, 0).area <= max_area; ++l) {
    for (int lp = 0; lp <= l; ++lp) {
      for (int lpp = 0; lpp <= lp; ++lpp) {
        const ProtocolParams p = candidate_params(l, lp, lpp);
        if (p.area > max_area) continue;
        ProtocolCandidate c;
        c.l = l;
        c.l_prime = lp;
        c.l_dprime = lpp;
        c.x_op = p.x;
        c.area_op = p.area;
        all.push_back(c);
      }
    }
  }

  kernels::for_each_index(all.size(), exec, [&](std::size_t i) {
    ProtocolCandidate& c = all[i];
    c.f_ideal = fidelity_single(c.area_op, c.x_op);
    const RefineResult r = refine_local(c.x_op, c.area_op);
    c.x_refined = r.x;
    c.area_refined = r.area;
    c.f_refined = r.fidelity;
    c.converged = r.converged;
  });

  // Several triples can refine into one basin; keep the one whose seed was best.
  std::stable_sort(all.begin(), all.end(), [](const ProtocolCandidate& l, const ProtocolCandidate& r) {
    return l.f_ideal > r.f_ideal;
  });
  std::vector<ProtocolCandidate> unique;
  for (const auto& c : all) {
    const bool seen = std::any_of(unique.begin(), unique.end(), [&](const ProtocolCandidate& u) {
      return std::abs(u.x_refined - c.x_refined) <= kDedupTolerance &&
             std::abs(u.area_refined - c.area_refined) <= kDedupTolerance;
    });
    if (!seen) unique.push_back(c);
  }
  std::sort(unique.begin(), unique.end(), [](const ProtocolCandidate& l, const ProtocolCandidate& r) {
    if (l.f_refined != r.f_refined) return l.f_refined > r.f_refined;
    return std::tie(l.l, l.l_prime, l.l_dprime) < std::tie(r.l, r.l_prime, r.l_dprime);
  });
  return unique;
}

namespace {

bool tuple_less(const DiophantineTuple& l, const DiophantineTuple& r) {
  if (l.relative_error != r.relative_error) return l.relative_error < r.relative_error;
  return l.values < r.values;
}

// Bounded collection of the smallest tuples.
class BestTuples {
 public:
  explicit BestTuples(std::size_t limit) : limit_(limit) {}

  void offer(DiophantineTuple t) {
    if (limit_ == 0) return;
    if (heap_.size() < limit_) {
      heap_.push_back(std::move(t));
      std::push_heap(heap_.begin(), heap_.end(), tuple_less);
    } else if (tuple_less(t, heap_.front())) {
      std::pop_heap(heap_.begin(), heap_.end(), tuple_less);
      heap_.back() = std::move(t);
      std::push_heap(heap_.begin(), heap_.end(), tuple_less);
    }
  }

  void merge(const BestTuples& other) {
    for (const auto& t : other.heap_) offer(t);
  }

  std::vector<DiophantineTuple> sorted() const {
    auto out = heap_;
    std::sort(out.begin(), out.end(), tuple_less);
    return out;
  }

 private:
  std::size_t limit_;
  std::vector<DiophantineTuple> heap_;
};

struct ScanTally {
  std::int64_t exact = 0;
  std::int64_t scanned = 0;
};

// Best target q = 2 (mod 4), q <= bound, for the given sum of squares.
void offer_targets(std::vector<std::int64_t> summands, std::int64_t sum, std::int64_t bound,
                   BestTuples& best, ScanTally& tally) {
  ++tally.scanned;
  auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(sum)));
  while (root * root > sum) --root;
  while ((root + 1) * (root + 1) <= sum) ++root;
  // Lattice points bracketing the root.
  std::int64_t below = root - ((root - 2) % 4 + 4) % 4;
  std::int64_t above = below + 4;
  std::int64_t best_q = -1;
  double best_err = std::numeric_limits<double>::infinity();
  for (std::int64_t q : {below, above}) {
    if (q < 2 || q > bound) continue;
    const std::int64_t q2 = q * q;
    if (q2 == sum) {
      ++tally.exact;
      return;
    }
    const double err = std::abs(static_cast<double>(q2 - sum)) / static_cast<double>(q2);
    if (err < best_err) {
      best_err = err;
      best_q = q;
    }
  }
  if (best_q < 0) return;
  summands.push_back(best_q);
  best.offer({std::move(summands), best_err});
}

}  // namespace

DiophantineSearch diophantine_search(int terms, std::int64_t bound, std::size_t limit, Exec exec) {
  if (terms != 2 && terms != 3) throw InvalidArgument("diophantine_search supports 2 or 3 terms");
  if (bound < 2 || bound > 1'000'000) throw InvalidArgument("bound must lie in [2, 1e6]");

  std::vector<std::int64_t> lattice;
  for (std::int64_t v = 2; v <= bound; v += 4) lattice.push_back(v);
  const std::size_t n = lattice.size();

  std::vector<BestTuples> best(n, BestTuples(limit));
  std::vector<ScanTally> tally(n);
  kernels::for_each_index(n, exec, [&](std::size_t i) {
    const std::int64_t m = lattice[i];
    for (std::size_t j = i; j < n; ++j) {
      const std::int64_t k = lattice[j];
      if (terms == 2) {
        offer_targets({m, k}, m * m + k * k, bound, best[i], tally[i]);
        continue;
      }
      for (std::size_t h = j; h < n; ++h) {
        const std::int64_t p = lattice[h];
        offer_targets({m, k, p}, m * m + k * k + p * p, bound, best[i], tally[i]);
      }
    }
  });

  BestTuples merged(limit);
  DiophantineSearch out;
  for (std::size_t i = 0; i < n; ++i) {
    merged.merge(best[i]);
    out.exact_solutions += tally[i].exact;
    out.scanned += tally[i].scanned;
  }
  out.best = merged.sorted();
  return out;
}

bool congruence_certificate(int terms) {
  if (terms < 1) throw InvalidArgument("terms must be positive");
  std::set<int> target;
  for (int r = 0; r < 16; ++r) target.insert(((4 * r + 2) * (4 * r + 2)) % 16);
  // All reachable sums of `terms` such squares mod 16.
  std::set<int> sums = {0};
  for (int t = 0; t < terms; ++t) {
    std::set<int> next;
    for (int s : sums) {
      for (int sq : target) next.insert((s + sq) % 16);
    }
    sums = std::move(next);
  }
  return std::none_of(sums.begin(), sums.end(), [&](int s) { return target.count(s) > 0; });
}

Family parse_family(const std::string& tag) {
  if (tag == "checkered") return Family::Checkered;
  if (tag == "aligned") return Family::Aligned;
  if (tag == "anti-aligned") return Family::AntiAligned;
  if (tag == "x2-neg-x1") return Family::AntiAlignedRatio;
  if (tag == "orthogonal") return Family::Orthogonal;
  throw InvalidArgument("unknown family '" + tag +
                        "' (expected checkered, aligned, anti-aligned, x2-neg-x1, orthogonal)");
}

const char* to_string(Family f) {
  switch (f) {
    case Family::Checkered: return "checkered";
    case Family::Aligned: return "aligned";
    case Family::AntiAligned: return "anti-aligned";
    case Family::AntiAlignedRatio: return "x2-neg-x1";
    case Family::Orthogonal: return "orthogonal";
  }
  return "?";
}

StructuralVector family_second_vector(Family f, const StructuralVector& e1, double x2) {
  switch (f) {
    case Family::Checkered: return structural_from_ratio(x2);
    case Family::Aligned: return e1;
    case Family::AntiAligned: return -e1;
    case Family::AntiAlignedRatio: return structural_from_ratio(-e1.ratio());
    case Family::Orthogonal: return StructuralVector(e1.b(), -e1.a());
  }
  return e1;
}

double family_fidelity(Family f, double area1, double area2, double x1, double x2) {
  const StructuralVector e1 = structural_from_ratio(x1);
  return two_pulse_fidelity(area1, area2, e1, family_second_vector(f, e1, x2));
}

namespace {

constexpr double kLatticeTolerance = 1e-9;

double derived_x2(Family f, double x1, double x2) {
  switch (f) {
    case Family::Checkered: return x2;
    case Family::Aligned: return x1;
    case Family::AntiAligned: return x1;  // full sign flip keeps the ratio
    case Family::AntiAlignedRatio: return -x1;
    case Family::Orthogonal: return x1 == 0.0 ? -std::numeric_limits<double>::infinity() : -1.0 / x1;
  }
  return x2;
}

std::vector<double> ratio_lattice(const FamilyRequest& req) {
  if (req.x1) return {*req.x1};
  std::vector<double> xs;
  for (int lp = 0; candidate_params(lp, lp, 0).area <= req.budget; ++lp) {
    for (int lpp = 0; lpp <= lp; ++lpp) {
      if (candidate_params(lp, lp, lpp).area > req.budget) continue;
      const double x = candidate_params(lp, lp, lpp).x;
      if (std::none_of(xs.begin(), xs.end(), [&](double v) { return std::abs(v - x) < 1e-12; })) {
        xs.push_back(x);
      }
    }
  }
  return xs;
}

// Checkered area pairs: one area (4l+2) pi, the other 4m pi.
std::vector<std::pair<double, double>> checkered_areas(const FamilyRequest& req) {
  std::vector<std::pair<double, double>> out;
  if (req.area1) {
    const double a1 = *req.area1;
    const double c = std::cos(0.5 * a1);
    const bool odd = std::abs(c + 1.0) < kLatticeTolerance;
    const bool even = std::abs(c - 1.0) < kLatticeTolerance;
    if (!odd && !even) {
      throw InvalidArgument("checkered family needs A1 = (4l+2) pi or 4m pi");
    }
    const double start = odd ? 0.0 : 2.0 * kPi;
    for (double a2 = start; std::abs(a1) + a2 <= req.budget + kLatticeTolerance; a2 += 4.0 * kPi) {
      out.emplace_back(a1, a2);
    }
    return out;
  }
  for (double odd = 2.0 * kPi; odd <= req.budget + kLatticeTolerance; odd += 4.0 * kPi) {
    for (double even = 0.0; odd + even <= req.budget + kLatticeTolerance; even += 4.0 * kPi) {
      out.emplace_back(odd, even);
      out.emplace_back(even, odd);
    }
  }
  return out;
}

// Area pairs with A1 +- A2 = (4n+2) pi, A1 on a pi/2 lattice.
std::vector<std::pair<double, double>> sum_rule_areas(const FamilyRequest& req, double sign) {
  std::vector<double> firsts;
  if (req.area1) {
    firsts.push_back(*req.area1);
  } else {
    for (double a1 = 0.0; a1 <= req.budget + kLatticeTolerance; a1 += 0.5 * kPi) firsts.push_back(a1);
  }
  const int n_max = static_cast<int>(std::ceil(req.budget / (4.0 * kPi))) + 1;
  std::vector<std::pair<double, double>> out;
  for (double a1 : firsts) {
    for (int n = -n_max; n <= n_max; ++n) {
      const double total = (4.0 * n + 2.0) * kPi;
      // a1 + sign * a2 = total
      const double a2 = sign * (total - a1);
      if (std::abs(a1) + std::abs(a2) <= req.budget + kLatticeTolerance) out.emplace_back(a1, a2);
    }
  }
  return out;
}

void refine_seed(FamilySeed& s, const FamilyRequest& req) {
  const Family f = s.family;
  const RefineRadius radius;
  // Free parameters are packed in a vector; the rest stay at their seed values.
  const bool free_x1 = !req.x1.has_value();
  const bool free_a1 = f == Family::Orthogonal && !req.area1.has_value();
  const bool free_a2 = f != Family::Checkered;
  const bool free_x2 = f == Family::Checkered;

  std::vector<double> start, lo, hi;
  auto add = [&](bool on, double v, double r, bool clip_at_zero) {
    if (!on) return;
    start.push_back(v);
    lo.push_back(clip_at_zero && v > 0.0 ? std::max(0.0, v - r) : v - r);
    hi.push_back(v + r);
  };
  add(free_x1, s.x1, radius.x, true);
  add(free_x2, s.x2, radius.x, true);
  add(free_a1, s.area1, radius.area, false);
  add(free_a2, s.area2, radius.area, false);

  auto unpack = [&](const std::vector<double>& p, double& x1, double& x2, double& a1, double& a2) {
    std::size_t k = 0;
    x1 = free_x1 ? p[k++] : s.x1;
    x2 = free_x2 ? p[k++] : s.x2;
    a1 = free_a1 ? p[k++] : s.area1;
    a2 = free_a2 ? p[k++] : s.area2;
    x2 = derived_x2(f, x1, x2);
  };

  s.f_seed = family_fidelity(f, s.area1, s.area2, s.x1, s.x2);
  if (start.empty()) {
    s.x1_refined = s.x1;
    s.x2_refined = s.x2;
    s.area1_refined = s.area1;
    s.area2_refined = s.area2;
    s.f_refined = s.f_seed;
    s.converged = true;
    return;
  }
  const auto objective = [&](const std::vector<double>& p) {
    double x1, x2, a1, a2;
    unpack(p, x1, x2, a1, a2);
    return family_fidelity(f, a1, a2, x1, x2);
  };
  const SimplexResult r = maximize_simplex(objective, start, lo, hi);
  unpack(r.point, s.x1_refined, s.x2_refined, s.area1_refined, s.area2_refined);
  s.f_refined = r.value;
  s.converged = r.converged;
}

}  // namespace

std::vector<FamilySeed> two_pulse_families(const FamilyRequest& req, Exec exec) {
  if (!(req.budget > 2.0 * kPi)) throw InvalidArgument("family budget must exceed 2 pi");

  const std::vector<double> ratios = ratio_lattice(req);
  std::vector<std::pair<double, double>> areas;
  switch (req.family) {
    case Family::Checkered:
    case Family::Orthogonal: areas = checkered_areas(req); break;
    case Family::Aligned: areas = sum_rule_areas(req, 1.0); break;
    case Family::AntiAligned:
    case Family::AntiAlignedRatio: areas = sum_rule_areas(req, -1.0); break;
  }

  std::vector<FamilySeed> seeds;
  for (const auto& [a1, a2] : areas) {
    for (double x : ratios) {
      FamilySeed s;
      s.family = req.family;
      s.area1 = a1;
      s.area2 = a2;
      s.x1 = x;
      s.x2 = derived_x2(req.family, x, x);
      seeds.push_back(s);
    }
  }

  kernels::for_each_index(seeds.size(), exec, [&](std::size_t i) { refine_seed(seeds[i], req); });

  std::stable_sort(seeds.begin(), seeds.end(),
                   [](const FamilySeed& l, const FamilySeed& r) { return l.f_seed > r.f_seed; });
  std::vector<FamilySeed> unique;
  auto close = [](double l, double r) {
    return (std::isinf(l) && l == r) || std::abs(l - r) <= kDedupTolerance;
  };
  for (const auto& s : seeds) {
    const bool seen = std::any_of(unique.begin(), unique.end(), [&](const FamilySeed& u) {
      return close(u.x1_refined, s.x1_refined) && close(u.x2_refined, s.x2_refined) &&
             close(u.area1_refined, s.area1_refined) && close(u.area2_refined, s.area2_refined);
    });
    if (!seen) unique.push_back(s);
  }
  std::sort(unique.begin(), unique.end(), [](const FamilySeed& l, const FamilySeed& r) {
    if (l.f_refined != r.f_refined) return l.f_refined > r.f_refined;
    return std::tie(l.area1, l.area2, l.x1) < std::tie(r.area1, r.area2, r.x1);
  });
  return unique;
}

}  // namespace rydgate
