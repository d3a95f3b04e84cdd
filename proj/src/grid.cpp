#include "rydgate/grid.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "rydgate/error.hpp"
#include "rydgate/fidelity.hpp"
#include "rydgate/units.hpp"

namespace rydgate {

namespace {

const std::set<std::string> kAxisNames = {"A", "A1", "A2", "x", "x1", "x2"};

std::string canonical(const std::string& name) {
  if (name == "A") return "A1";
  if (name == "x") return "x1";
  return name;
}

}  // namespace

std::vector<double> AxisSpec::values() const {
  std::vector<double> v(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) v[static_cast<std::size_t>(i)] = min + (max - min) * i / (points - 1);
  return v;
}

FamilyConstraint parse_constraint(const std::string& tag) {
  if (tag == "none") return FamilyConstraint::None;
  if (tag == "aligned") return FamilyConstraint::Aligned;
  if (tag == "anti-aligned") return FamilyConstraint::AntiAligned;
  if (tag == "orthogonal") return FamilyConstraint::Orthogonal;
  if (tag == "x2-neg-x1") return FamilyConstraint::X2NegX1;
  throw InvalidArgument("unknown constraint '" + tag +
                        "' (expected none, aligned, anti-aligned, orthogonal, x2-neg-x1)");
}

const char* to_string(FamilyConstraint c) {
  switch (c) {
    case FamilyConstraint::None: return "none";
    case FamilyConstraint::Aligned: return "aligned";
    case FamilyConstraint::AntiAligned: return "anti-aligned";
    case FamilyConstraint::Orthogonal: return "orthogonal";
    case FamilyConstraint::X2NegX1: return "x2-neg-x1";
  }
  return "?";
}

void GridSpec::validate() const {
  if (axes.empty() || axes.size() > 2) throw InvalidArgument("a grid needs one or two axes");
  std::set<std::string> bound;
  for (const auto& ax : axes) {
    if (!kAxisNames.count(ax.name)) throw InvalidArgument("unknown axis '" + ax.name + "'");
    if (ax.points < 2) throw InvalidArgument("axis '" + ax.name + "' needs at least 2 points");
    if (!(ax.min < ax.max)) throw InvalidArgument("axis '" + ax.name + "' needs min < max");
    if (!bound.insert(canonical(ax.name)).second) {
      throw InvalidArgument("parameter '" + ax.name + "' given twice");
    }
  }
  for (const auto& [name, value] : fixed) {
    if (!kAxisNames.count(name)) throw InvalidArgument("unknown parameter '" + name + "'");
    if (!std::isfinite(value)) throw InvalidArgument("parameter '" + name + "' must be finite");
    if (!bound.insert(canonical(name)).second) {
      throw InvalidArgument("parameter '" + name + "' given twice");
    }
  }
  for (const char* required : {"A1", "x1"}) {
    if (!bound.count(required)) {
      throw InvalidArgument(std::string("grid leaves ") + required + " unbound");
    }
  }
  const bool two_pulse = bound.count("A2") > 0;
  if (!two_pulse && (bound.count("x2") || constraint != FamilyConstraint::None)) {
    throw InvalidArgument("x2 or a family constraint needs A2 to be swept or fixed");
  }
  if (two_pulse && constraint == FamilyConstraint::None && !bound.count("x2")) {
    throw InvalidArgument("two-pulse grid without a constraint needs x2");
  }
  if (two_pulse && constraint != FamilyConstraint::None && bound.count("x2")) {
    throw InvalidArgument("x2 is implied by the constraint and cannot be bound");
  }
}

double GridSpec::evaluate(const std::vector<double>& swept) const {
  std::map<std::string, double> p;
  for (const auto& [name, value] : fixed) p[canonical(name)] = value;
  for (std::size_t i = 0; i < axes.size(); ++i) p[canonical(axes[i].name)] = swept[i];

  const double a1 = p.at("A1");
  const double x1 = p.at("x1");
  const auto a2_it = p.find("A2");
  if (a2_it == p.end()) return fidelity_single(a1, x1);

  const StructuralVector e1 = structural_from_ratio(x1);
  StructuralVector e2 = e1;
  switch (constraint) {
    case FamilyConstraint::None: e2 = structural_from_ratio(p.at("x2")); break;
    case FamilyConstraint::Aligned: e2 = e1; break;
    case FamilyConstraint::AntiAligned: e2 = -e1; break;
    case FamilyConstraint::Orthogonal: e2 = StructuralVector(e1.b(), -e1.a()); break;
    case FamilyConstraint::X2NegX1: e2 = structural_from_ratio(-x1); break;
  }
  return two_pulse_fidelity(a1, a2_it->second, e1, e2);
}

GridResult evaluate_grid(const GridSpec& spec, Exec exec) {
  spec.validate();
  GridResult out;
  for (const auto& ax : spec.axes) {
    out.axis_names.push_back(ax.name);
    out.axis_values.push_back(ax.values());
  }
  const std::size_t inner = out.axis_values.size() == 2 ? out.axis_values[1].size() : 1;
  const std::size_t total = out.axis_values[0].size() * inner;
  out.values.resize(total);
  kernels::for_each_index(total, exec, [&](std::size_t k) {
    std::vector<double> point = {out.axis_values[0][k / inner]};
    if (out.axis_values.size() == 2) point.push_back(out.axis_values[1][k % inner]);
    out.values[k] = spec.evaluate(point);
  });

  out.metadata["constraint"] = to_string(spec.constraint);
  std::string bindings;
  for (const auto& [name, value] : spec.fixed) {
    if (!bindings.empty()) bindings += ";";
    bindings += name + "=" + format_number(value);
  }
  out.metadata["fixed"] = bindings;
  return out;
}

std::string write_grid_csv(const GridResult& grid) {
  std::ostringstream os;
  for (const auto& [key, value] : grid.metadata) os << "# " << key << ": " << value << "\n";
  for (const auto& name : grid.axis_names) os << name << ",";
  os << "fidelity\n";
  const std::size_t inner = grid.axis_values.size() == 2 ? grid.axis_values[1].size() : 1;
  for (std::size_t k = 0; k < grid.values.size(); ++k) {
    os << format_number(grid.axis_values[0][k / inner]) << ",";
    if (grid.axis_values.size() == 2) os << format_number(grid.axis_values[1][k % inner]) << ",";
    os << format_number(grid.values[k]) << "\n";
  }
  return os.str();
}

GridResult parse_grid_csv(const std::string& text) {
  GridResult out;
  std::istringstream is(text);
  std::string line;
  bool have_header = false;
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      const auto colon = line.find(": ");
      if (colon == std::string::npos) throw InvalidArgument("bad metadata line: " + line);
      out.metadata[line.substr(2, colon - 2)] = line.substr(colon + 2);
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!have_header) {
      if (cells.size() < 2 || cells.size() > 3 || cells.back() != "fidelity") {
        throw InvalidArgument("bad grid CSV header: " + line);
      }
      out.axis_names.assign(cells.begin(), cells.end() - 1);
      have_header = true;
      continue;
    }
    if (cells.size() != out.axis_names.size() + 1) throw InvalidArgument("bad grid CSV row: " + line);
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(parse_real(c));
    rows.push_back(std::move(row));
  }
  if (!have_header) throw InvalidArgument("grid CSV has no header");

  out.axis_values.resize(out.axis_names.size());
  for (const auto& row : rows) {
    for (std::size_t a = 0; a < out.axis_names.size(); ++a) {
      auto& vals = out.axis_values[a];
      // Row-major order: a value is new for axis 0 when it changes, for axis 1
      // until the first axis moves on.
      if (a == 0 ? (vals.empty() || vals.back() != row[0]) : (out.axis_values[0].size() == 1)) {
        vals.push_back(row[a]);
      }
    }
    out.values.push_back(row.back());
  }
  const std::size_t expected = out.axis_values.size() == 2
                                   ? out.axis_values[0].size() * out.axis_values[1].size()
                                   : out.axis_values[0].size();
  if (expected != out.values.size()) throw InvalidArgument("grid CSV is not a full rectangular grid");
  return out;
}

std::string overlay_curve_csv(const AxisSpec& x_axis, double scale) {
  std::ostringstream os;
  os << "x,A\n";
  for (double x : x_axis.values()) {
    if (x == 0.0) continue;
    os << format_number(x) << "," << format_number(scale * std::sqrt(1.0 + x * x) / x) << "\n";
  }
  return os.str();
}

std::vector<double> ridge_maxima(const GridResult& grid, std::size_t area_axis, std::size_t ratio_axis,
                                 const std::function<double(double)>& curve, int band) {
  if (grid.axis_values.size() != 2 || area_axis > 1 || ratio_axis > 1 || area_axis == ratio_axis) {
    throw InvalidArgument("ridge_maxima needs a two-axis grid with distinct area and ratio axes");
  }
  const auto& areas = grid.axis_values[area_axis];
  const auto& ratios = grid.axis_values[ratio_axis];
  auto value = [&](std::size_t ia, std::size_t ix) {
    return area_axis == 0 ? grid.at(ia, ix) : grid.at(ix, ia);
  };

  std::vector<double> ridge(ratios.size(), -1.0);
  for (std::size_t ix = 0; ix < ratios.size(); ++ix) {
    const double target = curve(ratios[ix]);
    if (!(target >= areas.front() && target <= areas.back())) continue;
    const auto nearest = std::min_element(areas.begin(), areas.end(), [&](double l, double r) {
      return std::abs(l - target) < std::abs(r - target);
    });
    const auto centre = static_cast<long>(nearest - areas.begin());
    const long lo = std::max(0L, centre - band);
    const long hi = std::min(static_cast<long>(areas.size()) - 1, centre + band);
    for (long ia = lo; ia <= hi; ++ia) {
      ridge[ix] = std::max(ridge[ix], value(static_cast<std::size_t>(ia), ix));
    }
  }

  std::vector<double> maxima;
  for (std::size_t ix = 1; ix + 1 < ratios.size(); ++ix) {
    if (ridge[ix] < 0.0 || ridge[ix - 1] < 0.0 || ridge[ix + 1] < 0.0) continue;
    if (ridge[ix] >= ridge[ix - 1] && ridge[ix] > ridge[ix + 1]) maxima.push_back(ratios[ix]);
  }
  return maxima;
}

}  // namespace rydgate
