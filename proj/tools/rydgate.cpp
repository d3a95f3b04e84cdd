// rydgate: fidelity, map, optimize, beams, noise, verify.
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rydgate/beams.hpp"
#include "rydgate/config.hpp"
#include "rydgate/dioph_opt.hpp"
#include "rydgate/error.hpp"
#include "rydgate/fidelity.hpp"
#include "rydgate/grid.hpp"
#include "rydgate/kernels.hpp"
#include "rydgate/noise.hpp"
#include "rydgate/report.hpp"
#include "rydgate/tdse.hpp"
#include "rydgate/units.hpp"
#include "rydgate/verify.hpp"

using namespace rydgate;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kVerifyFailed = 2, kNumerical = 3 };

struct Globals {
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
  if (!out) throw InvalidArgument("write to '" + path + "' failed");
}

int resolve_threads(const Globals& g) {
  if (g.threads) return *g.threads;
  if (const char* env = std::getenv("RYDGATE_THREADS"); env && *env) {
    const double v = parse_real(env);
    if (v < 1 || v != static_cast<int>(v)) throw InvalidArgument("RYDGATE_THREADS must be a positive integer");
    return static_cast<int>(v);
  }
  return 0;
}

json metadata_json(const Globals& g, const std::string& command) {
  json m = {{"version", kVersion}, {"command", command}, {"threads", kernels::max_threads()}};
  if (g.seed) m["seed"] = *g.seed;
  return m;
}

// fidelity ------------------------------------------------------------------

struct FidelityArgs {
  std::vector<std::string> pulses;
  bool json = false;
  bool tdse = false;
  std::string envelope = "gaussian";
};

int run_fidelity(const FidelityArgs& a, const Globals& g) {
  PulseSequence seq;
  for (const auto& p : a.pulses) seq.pulses.push_back(parse_pulse(p));
  std::optional<double> tdse_diff;
  if (a.tdse) {
    const Envelope env{a.envelope == "square" ? EnvelopeShape::Square : EnvelopeShape::Gaussian, 1.0};
    tdse_diff = compose(seq).max_abs_diff(propagate_numeric(seq, env));
  }
  if (a.json) {
    json out = protocol_record(seq);
    out["metadata"] = metadata_json(g, "fidelity");
    if (tdse_diff) out["tdse_max_abs_diff"] = *tdse_diff;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << protocol_text(seq);
    if (tdse_diff) std::cout << "tdse max |dU|: " << format_number(*tdse_diff) << "\n";
  }
  return kOk;
}

// map -----------------------------------------------------------------------

struct MapArgs {
  std::string config;
  std::vector<std::string> axes;   // name:min:max:points
  std::vector<std::string> fixed;  // name=value
  std::string constraint = "none";
  std::string out;
  std::string overlay;
  std::string overlay_scale = "2pi";
};

AxisSpec parse_axis(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 4) throw InvalidArgument("axis '" + text + "' must be name:min:max:points");
  AxisSpec a;
  a.name = parts[0];
  const bool angle = !a.name.empty() && a.name[0] == 'A';
  a.min = angle ? parse_angle(parts[1]) : parse_real(parts[1]);
  a.max = angle ? parse_angle(parts[2]) : parse_real(parts[2]);
  const double points = parse_real(parts[3]);
  if (points != static_cast<int>(points)) throw InvalidArgument("axis points must be an integer");
  a.points = static_cast<int>(points);
  return a;
}

int run_map(const MapArgs& a, const Globals&) {
  GridSpec spec;
  if (!a.config.empty()) spec = load_grid_spec(read_text_file(a.config));
  for (const auto& ax : a.axes) spec.axes.push_back(parse_axis(ax));
  for (const auto& f : a.fixed) {
    const auto eq = f.find('=');
    if (eq == std::string::npos) throw InvalidArgument("--fix expects name=value, got '" + f + "'");
    const std::string name = f.substr(0, eq);
    spec.fixed[name] = name[0] == 'A' ? parse_angle(f.substr(eq + 1)) : parse_real(f.substr(eq + 1));
  }
  if (a.constraint != "none" || a.config.empty()) spec.constraint = parse_constraint(a.constraint);
  spec.validate();

  GridResult grid = evaluate_grid(spec);
  grid.metadata["version"] = kVersion;
  grid.metadata["timestamp"] = utc_timestamp();
  emit(write_grid_csv(grid), a.out);

  if (!a.overlay.empty()) {
    const AxisSpec* ratio = nullptr;
    for (const auto& ax : spec.axes) {
      if (ax.name[0] == 'x') ratio = &ax;
    }
    if (!ratio) throw InvalidArgument("--overlay needs a swept x axis");
    emit(overlay_curve_csv(*ratio, parse_angle(a.overlay_scale)), a.overlay);
  }
  return kOk;
}

// optimize ------------------------------------------------------------------

struct OptimizeArgs {
  std::string max_area;
  std::string family;
  std::string budget = "10pi";
  std::string area1;
  std::string x1;
  int dioph_terms = 0;
  std::int64_t bound = 20;
  std::size_t limit = 16;
  std::size_t top = 0;
};

int run_optimize(const OptimizeArgs& a, const Globals& g) {
  json out;
  out["metadata"] = metadata_json(g, "optimize");
  json records = json::array();
  if (a.dioph_terms != 0) {
    const auto search = diophantine_search(a.dioph_terms, a.bound, a.limit);
    for (const auto& t : search.best) records.push_back({{"values", t.values}, {"relative_error", t.relative_error}});
    out["metadata"]["terms"] = a.dioph_terms;
    out["metadata"]["bound"] = a.bound;
    out["exact_solutions"] = search.exact_solutions;
    out["scanned"] = search.scanned;
    out["congruence_certificate"] = congruence_certificate(a.dioph_terms);
    out["tuples"] = records;
  } else if (!a.family.empty()) {
    FamilyRequest req;
    req.family = parse_family(a.family);
    req.budget = parse_angle(a.budget);
    if (!a.area1.empty()) req.area1 = parse_angle(a.area1);
    if (!a.x1.empty()) req.x1 = parse_real(a.x1);
    for (const auto& s : two_pulse_families(req)) {
      if (a.top && records.size() >= a.top) break;
      records.push_back(family_record(s));
    }
    out["metadata"]["family"] = to_string(req.family);
    out["metadata"]["budget_pi"] = req.budget / kPi;
    out["seeds"] = records;
  } else {
    if (a.max_area.empty()) throw InvalidArgument("optimize needs --max-area, --family or --diophantine");
    const double max_area = parse_angle(a.max_area);
    for (const auto& c : enumerate_candidates(max_area)) {
      if (a.top && records.size() >= a.top) break;
      records.push_back(candidate_record(c));
    }
    out["metadata"]["max_area_pi"] = max_area / kPi;
    out["candidates"] = records;
  }
  std::cout << out.dump(2) << "\n";
  return kOk;
}

// beams ---------------------------------------------------------------------

struct BeamsArgs {
  std::string config;
  std::optional<double> theta;
  std::vector<std::string> targets;  // ratios x for the two-qubit shortcut
  double omega0 = 1.0;
};

int run_beams(const BeamsArgs& a, const Globals& g) {
  BeamConfig cfg;
  if (!a.config.empty()) {
    cfg = load_beam_config(read_text_file(a.config));
  } else {
    if (!a.theta) throw InvalidArgument("beams needs --config or --theta");
    Eigen::Matrix2d s;
    s << 1.0, *a.theta, *a.theta, 1.0;
    cfg.geometry = BeamGeometry::from_overlaps(s);
    cfg.omega0 = a.omega0;
  }
  for (const auto& t : a.targets) {
    if (cfg.geometry.size() != 2) throw InvalidArgument("--target x needs a two-qubit geometry");
    const StructuralVector e = structural_from_ratio(parse_real(t));
    cfg.targets.push_back(Eigen::Vector2d(e.a(), e.b()));
  }
  if (cfg.targets.empty()) throw InvalidArgument("no target structural vectors given");

  const OverlapMatrix s = build_overlap_matrix(cfg.geometry);
  json matrix = json::array();
  for (Eigen::Index i = 0; i < s.s.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < s.s.cols(); ++j) row.push_back(s.s(i, j));
    matrix.push_back(row);
  }
  json pulses = json::array();
  for (const auto& e : cfg.targets) pulses.push_back(beam_record(solve_amplitudes(cfg.geometry, e, cfg.omega0)));
  json out = {{"metadata", metadata_json(g, "beams")},
              {"qubits", cfg.geometry.size()},
              {"overlap_matrix", matrix},
              {"condition_number", s.condition_number},
              {"pulses", pulses}};
  std::cout << out.dump(2) << "\n";
  return kOk;
}

// noise ---------------------------------------------------------------------

struct NoiseArgs {
  std::string config;
  std::string preset;
  std::string series;
  std::vector<std::string> pulses;
  std::optional<int> samples;
  std::optional<double> theta;
  std::string out;
};

int run_noise(const NoiseArgs& a, const Globals& g) {
  std::string preset = a.preset.empty() ? "standard" : a.preset;
  NoiseSpec spec;
  if (!a.config.empty()) {
    spec = load_noise_spec(read_text_file(a.config));
    preset = a.preset.empty() ? "config" : a.preset;
    if (!a.preset.empty()) throw InvalidArgument("give either --preset or --config, not both");
  } else {
    spec = noise_preset(preset);
  }
  if (g.seed) spec.seed = *g.seed;
  if (a.samples) spec.samples = *a.samples;
  if (a.theta) spec.theta = *a.theta;
  spec.validate();

  Metadata meta = noise_metadata(spec, preset);
  std::vector<NoiseRow> rows;
  if (!a.pulses.empty()) {
    if (!a.series.empty()) throw InvalidArgument("give either --series or --pulse, not both");
    PulseSequence seq;
    for (const auto& p : a.pulses) seq.pulses.push_back(parse_pulse(p));
    NoiseRow row;
    row.l_prime = -1;
    row.ideal_f = fidelity(compose(seq));
    row.summary = monte_carlo(seq, spec);
    rows.push_back(row);
    meta["protocol"] = "custom (l_prime = -1)";
  } else {
    rows = noise_series(parse_series(a.series.empty() ? "l0..6" : a.series), spec);
    meta["protocol"] = "(l, l, 0) at analytic x_op, A_op";
  }
  emit(write_noise_csv(rows, meta), a.out);
  for (const auto& r : rows) {
    std::cerr << "l'=" << r.l_prime << "  ideal " << format_number(r.ideal_f) << "  mean "
              << format_number(r.summary.mean_f) << "  std " << format_number(r.summary.std_f) << "\n";
  }
  return kOk;
}

// verify --------------------------------------------------------------------

struct VerifyArgs {
  std::vector<int> criteria;
  std::vector<std::string> injected;
  std::string json_path;
  bool quiet = false;
};

int run_verify(const VerifyArgs& a, const Globals& g, int threads) {
  VerifyOptions options;
  if (g.seed) options.seed = *g.seed;
  options.threads = threads;
  options.criteria = a.criteria;
  for (const auto& item : a.injected) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidArgument("--inject-tolerance expects NAME=VALUE");
    options.overrides[item.substr(0, eq)] = parse_real(item.substr(eq + 1));
  }
  json report = {{"metadata", metadata_json(g, "verify")}};
  report["metadata"]["seed"] = options.seed;
  json list = json::array();
  bool all = true;
  std::vector<int> ids = options.criteria;
  if (ids.empty()) {
    for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  }
  for (int id : ids) {
    const auto r = run_criterion(id, options);
    std::cout << format_criterion(r, !a.quiet) << std::flush;
    list.push_back(criterion_record(r));
    all = all && r.passed;
  }
  report["criteria"] = list;
  report["passed"] = all;
  if (!a.json_path.empty()) emit(report.dump(2) + "\n", a.json_path);
  return all ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rydberg-blockade CZ gate protocols with non-independent qubits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Globals g;
  std::uint64_t seed = 0;
  int threads = 0;
  auto* seed_opt = app.add_option("--seed", seed, "seed for every random draw")->check(CLI::NonNegativeNumber);
  auto* threads_opt =
      app.add_option("--threads", threads, "worker threads (default: RYDGATE_THREADS or all cores)")
          ->check(CLI::PositiveNumber);

  FidelityArgs fa;
  auto* fid = app.add_subcommand("fidelity", "fidelity, U(1,1), GPA table and mechanism labels of a protocol");
  fid->add_option("--pulse", fa.pulses, "A=<angle>,x=<ratio>[,phi=<angle>] or A=..,a=..,b=.. (repeat, in time order)")
      ->required();
  fid->add_flag("--json", fa.json, "JSON record instead of text");
  fid->add_flag("--tdse", fa.tdse, "also integrate the TDSE and report the largest propagator difference");
  fid->add_option("--envelope", fa.envelope, "TDSE envelope")->check(CLI::IsMember({"gaussian", "square"}));

  MapArgs ma;
  auto* map = app.add_subcommand("map", "fidelity map over one or two parameters (CSV)");
  map->add_option("--config", ma.config, "YAML file with a 'grid' section");
  map->add_option("--axis", ma.axes, "name:min:max:points, name in A, A1, A2, x, x1, x2");
  map->add_option("--fix", ma.fixed, "name=value binding");
  map->add_option("--constraint", ma.constraint, "none, aligned, anti-aligned, orthogonal, x2-neg-x1");
  map->add_option("--out", ma.out, "CSV path (default stdout)");
  map->add_option("--overlay", ma.overlay, "also write the curve A = scale sqrt(1+x^2)/x here");
  map->add_option("--overlay-scale", ma.overlay_scale, "curve scale (default 2pi)");

  OptimizeArgs oa;
  auto* opt = app.add_subcommand("optimize", "protocol candidates, two-pulse families or Diophantine search (JSON)");
  opt->add_option("--max-area", oa.max_area, "single-pulse candidates up to this area");
  opt->add_option("--family", oa.family, "checkered, aligned, anti-aligned, x2-neg-x1, orthogonal");
  opt->add_option("--budget", oa.budget, "family bound on |A1| + |A2|");
  opt->add_option("--A1", oa.area1, "hold A1 fixed (families)");
  opt->add_option("--x1", oa.x1, "hold x1 fixed (families)");
  opt->add_option("--diophantine", oa.dioph_terms, "number of squared terms (2 or 3)")->check(CLI::IsMember({2, 3}));
  opt->add_option("--bound", oa.bound, "Diophantine search bound")->check(CLI::PositiveNumber);
  opt->add_option("--limit", oa.limit, "Diophantine tuples kept");
  opt->add_option("--top", oa.top, "keep only the first N records");

  BeamsArgs ba;
  auto* beams = app.add_subcommand("beams", "beam amplitudes realizing target structural vectors (JSON)");
  beams->add_option("--config", ba.config, "YAML file with a 'geometry' section");
  beams->add_option("--theta", ba.theta, "two-qubit overlap (instead of --config)")->check(CLI::Range(0.0, 1.0));
  beams->add_option("--target", ba.targets, "target ratio x (two qubits, repeatable)");
  beams->add_option("--omega0", ba.omega0, "scale of the realized structural vector");

  NoiseArgs na;
  auto* noise = app.add_subcommand("noise", "Monte Carlo fidelity under shot-to-shot noise (CSV)");
  noise->add_option("--preset", na.preset, "standard, ultra or none")
      ->check(CLI::IsMember({"standard", "ultra", "none"}));
  noise->add_option("--config", na.config, "YAML file with a 'noise' section");
  noise->add_option("--series", na.series, "candidates (l, l, 0), e.g. l0..6");
  noise->add_option("--pulse", na.pulses, "custom protocol instead of a series (repeatable)");
  noise->add_option("--samples", na.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
  noise->add_option("--theta", na.theta, "beam overlap at the neighbouring qubit");
  noise->add_option("--out", na.out, "CSV path (default stdout)");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  verify->add_option("--criterion", va.criteria, "criterion id (repeatable)")->check(CLI::Range(1, kCriterionCount));
  verify->add_option("--inject-tolerance", va.injected, "NAME=VALUE override (harness self-check)");
  verify->add_option("--json", va.json_path, "write a JSON report here");
  verify->add_flag("--quiet", va.quiet, "only PASS/FAIL lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*seed_opt) g.seed = seed;
    if (*threads_opt) g.threads = threads;
    const int nthreads = resolve_threads(g);
    kernels::set_threads(nthreads);

    if (*fid) return run_fidelity(fa, g);
    if (*map) return run_map(ma, g);
    if (*opt) return run_optimize(oa, g);
    if (*beams) return run_beams(ba, g);
    if (*noise) return run_noise(na, g);
    if (*verify) return run_verify(va, g, nthreads);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
  return kUsage;
}
