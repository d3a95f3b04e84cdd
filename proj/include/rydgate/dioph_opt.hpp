#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rydgate/gate_core.hpp"
#include "rydgate/kernels.hpp"
#include "rydgate/simplex.hpp"

namespace rydgate {

struct ProtocolParams {
  double x = 1.0;     // b/a
  double area = 0.0;  // radians
};

// x_op = (4l''+2)/(4l'+2), A_op = (2l + 1 + sqrt((2l'+1)^2 + (2l''+1)^2)) pi.
// Requires l >= l' >= l'' >= 0.
ProtocolParams candidate_params(int l, int l_prime, int l_dprime);

struct RefineRadius {
  double x = 0.2;
  double area = 0.5 * kPi;
};

struct RefineResult {
  double x = 0.0;
  double area = 0.0;
  double fidelity = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Local maximum of fidelity_single inside the box (x0 +- radius.x, A0 +- radius.area).
// For x0 > 0 the box is clipped at x = 0.
RefineResult refine_local(double x0, double area0, const RefineRadius& radius = {},
                          const SimplexOptions& options = {});

struct ProtocolCandidate {
  int l = 0;
  int l_prime = 0;
  int l_dprime = 0;
  double x_op = 0.0;
  double area_op = 0.0;
  double f_ideal = 0.0;
  double x_refined = 0.0;
  double area_refined = 0.0;
  double f_refined = 0.0;
  bool converged = false;
};

inline constexpr double kDedupTolerance = 1e-6;

// Every ordered triple with A_op <= max_area, refined and deduplicated on
// (x*, A*); sorted by f_refined descending. Requires max_area > 2 pi.
std::vector<ProtocolCandidate> enumerate_candidates(double max_area, Exec exec = Exec::Parallel);

struct DiophantineTuple {
  // (m, n, p) for two terms or (m, n, p, q) for three; the last entry is the
  // integer whose square approximates the sum of the others' squares.
  std::vector<std::int64_t> values;
  double relative_error = 0.0;
};

struct DiophantineSearch {
  std::vector<DiophantineTuple> best;  // ascending relative error
  std::int64_t exact_solutions = 0;    // never included in best
  std::int64_t scanned = 0;
};

// Exhaustive scan over integers = 2 (mod 4) up to bound, nondecreasing
// summands, each paired with its best target. Keeps the `limit` best.
DiophantineSearch diophantine_search(int terms, std::int64_t bound, std::size_t limit = 64,
                                     Exec exec = Exec::Parallel);

// True when a sum of `terms` squares of integers = 2 (mod 4) can never equal
// such a square: checked over all residues mod 16.
bool congruence_certificate(int terms);

enum class Family { Checkered, Aligned, AntiAligned, AntiAlignedRatio, Orthogonal };

Family parse_family(const std::string& tag);
const char* to_string(Family f);

// Second structural vector implied by the family (Checkered uses x2 as given).
StructuralVector family_second_vector(Family f, const StructuralVector& e1, double x2);

struct FamilyRequest {
  Family family = Family::Checkered;
  double budget = 10.0 * kPi;       // bound on |A1| + |A2|
  std::optional<double> area1;      // hold A1 fixed
  std::optional<double> x1;         // hold x1 fixed
};

struct FamilySeed {
  Family family = Family::Checkered;
  double area1 = 0.0;
  double area2 = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double f_seed = 0.0;
  double area1_refined = 0.0;
  double area2_refined = 0.0;
  double x1_refined = 0.0;
  double x2_refined = 0.0;
  double f_refined = 0.0;
  bool converged = false;
};

double family_fidelity(Family f, double area1, double area2, double x1, double x2);

// Seeds on the family lattice, each refined with the family constraint held.
// Deduplicated on refined parameters and sorted by f_refined descending.
std::vector<FamilySeed> two_pulse_families(const FamilyRequest& request,
                                           Exec exec = Exec::Parallel);

}  // namespace rydgate
