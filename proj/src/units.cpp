#include "rydgate/units.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "rydgate/error.hpp"
#include "rydgate/gate_core.hpp"

namespace rydgate {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool parse_plain(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(out);
}

}  // namespace

double parse_real(const std::string& text) {
  const std::string s = trim(text);
  double v = 0.0;
  if (parse_plain(s, v)) return v;
  const auto slash = s.find('/');
  double num = 0.0, den = 0.0;
  if (slash != std::string::npos && parse_plain(trim(s.substr(0, slash)), num) &&
      parse_plain(trim(s.substr(slash + 1)), den) && den != 0.0) {
    return num / den;
  }
  throw InvalidArgument("not a number: '" + text + "'");
}

double parse_angle(const std::string& text) {
  const std::string s = trim(text);
  const auto pos = s.find("pi");
  if (pos == std::string::npos) {
    double v = 0.0;
    if (parse_plain(s, v)) return v;
    throw InvalidArgument("not an angle: '" + text + "'");
  }
  std::string coef = trim(s.substr(0, pos));
  const std::string tail = trim(s.substr(pos + 2));
  if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));

  double factor = 1.0;
  if (coef.empty() || coef == "+") {
    factor = 1.0;
  } else if (coef == "-") {
    factor = -1.0;
  } else if (!parse_plain(coef, factor)) {
    throw InvalidArgument("not an angle: '" + text + "'");
  }
  if (!tail.empty()) {
    double den = 0.0;
    if (tail.front() != '/' || !parse_plain(trim(tail.substr(1)), den) || den == 0.0) {
      throw InvalidArgument("not an angle: '" + text + "'");
    }
    factor /= den;
  }
  return factor * kPi;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace rydgate
