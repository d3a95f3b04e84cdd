#pragma once

#include <string>

namespace rydgate {

// Angle in radians from "6.162pi", "-pi", "0.5*pi", "pi/2" or a plain number
// of radians ("19.36"). Throws InvalidArgument on anything else.
double parse_angle(const std::string& text);

// Plain real number, rejecting trailing garbage. Accepts "a/b" fractions.
double parse_real(const std::string& text);

// "%.12g" of the value.
std::string format_number(double v);

}  // namespace rydgate
