#include "casimir/model.hpp"

#include <string>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

void require_finite(const std::string& field, double value) {
  if (!std::isfinite(value)) throw ValidationError(field, "must be finite");
}

void require_positive(const std::string& field, double value) {
  require_finite(field, value);
  if (!(value > 0.0)) throw ValidationError(field, "must be positive (got " + std::to_string(value) + ")");
}

void require_finite(const std::string& field, Vec3 v) {
  require_finite(field + ".x", v.x);
  require_finite(field + ".y", v.y);
  require_finite(field + ".z", v.z);
}

}  // namespace

bool operator==(const OscillatorSystem& a, const OscillatorSystem& b) {
  auto same_osc = [](const Oscillator& p, const Oscillator& q) { return p.mass == q.mass && p.omega == q.omega; };
  return same_osc(a.osc1, b.osc1) && same_osc(a.osc2, b.osc2) && a.thermal.beta == b.thermal.beta &&
         a.thermal.hbar == b.thermal.hbar && a.coupling.psi0 == b.coupling.psi0 &&
         a.coupling.grad_psi == b.coupling.grad_psi && a.motion.velocity == b.motion.velocity &&
         a.motion.eta == b.motion.eta;
}

OscillatorSystem canonical_system() { return OscillatorSystem{}; }

OscillatorSystem validate_system(const OscillatorSystem& raw) {
  require_positive("osc1.mass", raw.osc1.mass);
  require_positive("osc1.omega", raw.osc1.omega);
  require_positive("osc2.mass", raw.osc2.mass);
  require_positive("osc2.omega", raw.osc2.omega);
  // +inf is the zero-temperature sentinel, so beta is only checked for sign.
  if (std::isnan(raw.thermal.beta) || !(raw.thermal.beta > 0.0))
    throw ValidationError("thermal.beta", "must be positive or inf");
  require_positive("thermal.hbar", raw.thermal.hbar);
  require_finite("coupling.psi0", raw.coupling.psi0);
  require_finite("coupling.grad_psi", raw.coupling.grad_psi);
  require_finite("motion.velocity", raw.motion.velocity);
  require_positive("motion.eta", raw.motion.eta);
  return raw;
}

OscillatorSystem scale_units(const OscillatorSystem& sys, double length_factor, double time_factor,
                             double mass_factor) {
  require_positive("length_factor", length_factor);
  require_positive("time_factor", time_factor);
  require_positive("mass_factor", mass_factor);
  const double L = length_factor;
  const double T = time_factor;
  const double M = mass_factor;
  const double energy = M * L * L / (T * T);

  OscillatorSystem out = sys;
  out.osc1.mass *= M;
  out.osc2.mass *= M;
  out.osc1.omega /= T;
  out.osc2.omega /= T;
  out.thermal.hbar *= M * L * L / T;
  out.thermal.beta /= energy;
  out.coupling.psi0 *= energy / (L * L);
  out.coupling.grad_psi = (energy / (L * L * L)) * sys.coupling.grad_psi;
  out.motion.velocity = (L / T) * sys.motion.velocity;
  out.motion.eta /= T;
  return out;
}

}  // namespace casimir
