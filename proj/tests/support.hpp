#pragma once

// Fixed-seed generators and 50-digit reference formulas shared by the tests.

#include <cmath>
#include <cstdint>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "casimir/model.hpp"

namespace support {

using hp = boost::multiprecision::cpp_bin_float_50;

inline double rel_err(double got, double want) {
  if (want == 0.0) return std::fabs(got);
  return std::fabs(got - want) / std::fabs(want);
}

inline double rel_err(casimir::Vec3 got, casimir::Vec3 want) {
  const double scale = casimir::max_abs(want);
  if (scale == 0.0) return casimir::max_abs(got);
  return casimir::max_abs(got - want) / scale;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  int integer(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool coin() { return (rng_() & 1u) != 0; }
  casimir::Vec3 vec(double scale) { return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)}; }

  // beta hbar omega of order one, frequencies within a factor 2 of each other.
  casimir::OscillatorSystem system() {
    casimir::OscillatorSystem s;
    s.osc1 = {log_uniform(0.5, 2.0), log_uniform(0.5, 2.0)};
    s.osc2 = {log_uniform(0.5, 2.0), s.osc1.omega * uniform(0.6, 1.6)};
    s.thermal.hbar = log_uniform(0.5, 2.0);
    s.thermal.beta = log_uniform(0.5, 5.0) / (s.thermal.hbar * s.osc1.omega);
    s.coupling.psi0 = uniform(-1.0, 1.0);
    s.coupling.grad_psi = vec(1.0);
    s.motion.velocity = vec(0.2);
    s.motion.eta = log_uniform(1e-2, 1e-1) * s.osc1.omega;
    return s;
  }

 private:
  // 53 random bits in [0, 1); independent of the standard library's distributions.
  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  std::mt19937_64 rng_;
};

inline hp hp_coth(const hp& x) { return cosh(x) / sinh(x); }

// coth(beta hbar omega / 2) in 50 digits.
inline hp hp_coth_factor(double beta, double hbar, double omega) {
  return hp_coth(hp(beta) * hp(hbar) * hp(omega) / 2);
}

// eta W / (eta^2 + W^2)^2 in 50 digits.
inline hp hp_lorentzian_moment(const hp& w, const hp& eta) {
  const hp d = eta * eta + w * w;
  return eta * w / (d * d);
}

// Scalar friction coefficient f with F_f = f G, by naive subtraction in 50 digits.
inline hp hp_friction_scalar(const casimir::OscillatorSystem& s) {
  const hp w1 = s.osc1.omega, w2 = s.osc2.omega, eta = s.motion.eta;
  const hp d = hp(s.thermal.hbar) / (2 * hp(s.osc1.mass) * hp(s.osc2.mass) * w1 * w2);
  hp c1 = 1, c2 = 1;
  if (!std::isinf(s.thermal.beta)) {
    c1 = hp_coth_factor(s.thermal.beta, s.thermal.hbar, s.osc1.omega);
    c2 = hp_coth_factor(s.thermal.beta, s.thermal.hbar, s.osc2.omega);
  }
  return -d * ((c1 + c2) * hp_lorentzian_moment(w1 + w2, eta) + (c2 - c1) * hp_lorentzian_moment(w1 - w2, eta));
}

inline casimir::Vec3 geometry(const casimir::OscillatorSystem& s) {
  const auto& g = s.coupling.grad_psi;
  return casimir::dot(s.motion.velocity, g) * g;
}

}  // namespace support
