#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace rydgate {

using cplx = std::complex<double>;
using Mat3 = Eigen::Matrix3cd;
using Mat2 = Eigen::Matrix2cd;

inline constexpr double kPi = 3.14159265358979323846;

// Spatial coefficients (a, b) of one pulse at the two qubit sites, |e| = 1.
// Signs are meaningful: a negative component is a relative phase of pi.
class StructuralVector {
 public:
  // Unit vector along +a.
  StructuralVector() = default;

  // Throws InvalidArgument unless a^2 + b^2 = 1 within 1e-12.
  StructuralVector(double a, double b);

  // Normalizes (a, b); throws on the zero vector or non-finite input.
  static StructuralVector normalized(double a, double b);

  double a() const { return a_; }
  double b() const { return b_; }

  // b/a; infinite when a == 0.
  double ratio() const;

  double dot(const StructuralVector& other) const { return a_ * other.a_ + b_ * other.b_; }
  StructuralVector operator-() const { return StructuralVector(-a_, -b_, Unchecked{}); }

  bool operator==(const StructuralVector&) const = default;

 private:
  struct Unchecked {};
  StructuralVector(double a, double b, Unchecked) : a_(a), b_(b) {}

  double a_ = 1.0;
  double b_ = 0.0;
};

// (a, b) with b/a = x and a > 0.
StructuralVector structural_from_ratio(double x);

enum class Subsystem { V, A, B };

inline constexpr std::array<Subsystem, 3> kSubsystems = {Subsystem::V, Subsystem::A, Subsystem::B};

const char* to_string(Subsystem s);

struct Pulse {
  double area = 0.0;  // radians, signed
  StructuralVector structural;
  double phase = 0.0;  // global optical phase, radians

  // Mixing angle theta^S = GPA / 2.
  double mixing_angle(Subsystem s) const;
};

// Generalized pulse area 2 theta^S: A for V, aA for A, bA for B.
double gpa(const Pulse& p, Subsystem s);

// Time-ordered pulses; front() acts first.
struct PulseSequence {
  std::vector<Pulse> pulses;

  // Accumulated area sum_k |A_k|.
  double accumulated_area() const;
  std::size_t size() const { return pulses.size(); }
  bool empty() const { return pulses.empty(); }
};

// Block propagators over {|00>,|r0>,|0r>}, {|01>,|r1>}, {|10>,|1r>}.
// |11> is untouched and not stored.
struct PropagatorSet {
  Mat3 v = Mat3::Identity();
  Mat2 a = Mat2::Identity();
  Mat2 b = Mat2::Identity();

  static PropagatorSet identity() { return {}; }

  // Computational-state return amplitude U^S(1,1).
  cplx diagonal(Subsystem s) const;

  // max over blocks of ||U^dagger U - I||_max.
  double unitarity_defect() const;

  // max over blocks of ||this - other||_max.
  double max_abs_diff(const PropagatorSet& other) const;

  // Later-applied set on the left: returns later * earlier.
  friend PropagatorSet operator*(const PropagatorSet& later, const PropagatorSet& earlier);
};

PropagatorSet propagator_single(const Pulse& p);

// U_{N} ... U_{1}; throws InvalidArgument on an empty sequence.
PropagatorSet compose(const PulseSequence& seq);

}  // namespace rydgate
