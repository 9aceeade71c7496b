#pragma once

#include <cmath>
#include <limits>

namespace casimir {

// Units are not tracked at runtime. Dimensions are documented per field as
// M (mass), L (length), T (time); energy is M L^2 T^-2. scale_units() applies
// a consistent change of units so tests can check covariance.

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
constexpr Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
constexpr Vec3 operator*(Vec3 a, double s) { return s * a; }
constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline double max_abs(Vec3 a) { return std::fmax(std::fabs(a.x), std::fmax(std::fabs(a.y), std::fabs(a.z))); }

struct Oscillator {
  double mass = 1.0;   // M
  double omega = 1.0;  // T^-1
};

// beta == kZeroTemperature encodes T = 0; every consumer defines the limit.
inline constexpr double kZeroTemperature = std::numeric_limits<double>::infinity();

struct ThermalState {
  double beta = 2.0;  // energy^-1
  double hbar = 1.0;  // M L^2 T^-1

  bool zero_temperature() const { return std::isinf(beta); }
  // beta * hbar * omega, infinite at T = 0.
  double reduced(double omega) const { return beta * hbar * omega; }
};

struct CouplingGeometry {
  double psi0 = 0.0;         // psi(r0), energy L^-2
  Vec3 grad_psi{0, 0, 1.0};  // grad psi(r0), energy L^-3
};

struct Motion {
  Vec3 velocity{0, 0, 0.1};  // L T^-1
  double eta = 0.01;         // T^-1, convergence / damping rate
};

struct OscillatorSystem {
  Oscillator osc1{1.0, 1.0};
  Oscillator osc2{1.0, 1.1};
  ThermalState thermal{};
  CouplingGeometry coupling{};
  Motion motion{};
};

bool operator==(const OscillatorSystem& a, const OscillatorSystem& b);

struct Tolerances {
  double abs = 1e-12;
  double rel = 1e-9;
};

inline constexpr Tolerances kDefaultTolerances{};

// m1 = m2 = 1, w1 = 1, w2 = 1.1, hbar = 1, beta = 2, eta = 0.01,
// grad psi = (0,0,1), psi0 = 0, v = (0,0,0.1).
OscillatorSystem canonical_system();

// Throws ValidationError naming the first violated invariant.
OscillatorSystem validate_system(const OscillatorSystem& raw);

// Rescales every dimensional field as value * L^a M^b T^c for its dimension
// M^b L^a T^c. All factors must be positive.
OscillatorSystem scale_units(const OscillatorSystem& sys, double length_factor, double time_factor,
                             double mass_factor);

}  // namespace casimir
