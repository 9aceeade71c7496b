#pragma once

#include <cmath>
#include <span>

#include "casimir/execution.hpp"
#include "casimir/model.hpp"

namespace casimir {

// Closed-form thermal response kernel of the two-oscillator model,
//   phi(t) = D [c1 cos(w1 t) sin(w2 t) + c2 cos(w2 t) sin(w1 t)],
// with D = hbar / (2 m1 m2 w1 w2) and c_i = coth(beta hbar w_i / 2) = 2<n_i> + 1.
struct ResponseKernel {
  double D = 0.0;
  double omega1 = 0.0;
  double omega2 = 0.0;
  double c1 = 1.0;
  double c2 = 1.0;
};

// coth(beta hbar omega / 2). Exactly 1 at zero temperature.
double coth_factor(const ThermalState& thermal, double omega);

// coth(beta hbar w1 / 2) - coth(beta hbar w2 / 2) without subtracting the two
// coth values: -sinh(beta hbar Omega2 / 2) / (sinh(beta hbar w1 / 2) sinh(beta hbar w2 / 2)),
// Omega2 = w1 - w2, evaluated in exponential form so it neither overflows for
// large beta nor loses digits near resonance.
double coth_difference(const ThermalState& thermal, double omega1, double omega2);

ResponseKernel response_kernel(const OscillatorSystem& sys);

// Evaluated at |t| with the sign restored, so oddness holds bit for bit even
// where the math library's sin is not exactly odd.
inline double eval_phi(const ResponseKernel& k, double t) {
  const double a = std::fabs(t);
  const double v = k.D * (k.c1 * std::cos(k.omega1 * a) * std::sin(k.omega2 * a) +
                          k.c2 * std::cos(k.omega2 * a) * std::sin(k.omega1 * a));
  return std::signbit(t) ? -v : v;
}

// out[i] = eval_phi(k, t[i]).
void eval_phi_grid(const ResponseKernel& k, std::span<const double> t, std::span<double> out,
                   Execution exec = Execution::Parallel);

}  // namespace casimir
