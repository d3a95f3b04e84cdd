#pragma once

#include <stdexcept>
#include <string>

namespace rydgate {

// Bad caller input (maps to CLI exit code 1).
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

// Ill-conditioned solve, non-converged integration, exhausted iterations
// (maps to CLI exit code 3).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rydgate
