#include "casimir/response.hpp"

#include <cmath>
#include <stdexcept>

#include "casimir/errors.hpp"
#include "casimir/parallel.hpp"

namespace casimir {

namespace {

constexpr double kSeriesThreshold = 1e-4;

// coth(x) for x > 0.
double coth_positive(double x) {
  if (x < kSeriesThreshold) {
    const double x2 = x * x;
    return 1.0 / x + x / 3.0 - x * x2 / 45.0;
  }
  // 1 + 2 e^{-2x} / (1 - e^{-2x})
  return 1.0 + 2.0 * std::exp(-2.0 * x) / -std::expm1(-2.0 * x);
}

// (1 - e^{-2y}) for y >= 0, accurate for small y.
double one_minus_exp2(double y) { return -std::expm1(-2.0 * y); }

}  // namespace

double coth_factor(const ThermalState& thermal, double omega) {
  if (!(omega > 0.0)) throw ValidationError("omega", "must be positive");
  if (thermal.zero_temperature()) return 1.0;
  return coth_positive(0.5 * thermal.reduced(omega));
}

double coth_difference(const ThermalState& thermal, double omega1, double omega2) {
  if (!(omega1 > 0.0)) throw ValidationError("omega1", "must be positive");
  if (!(omega2 > 0.0)) throw ValidationError("omega2", "must be positive");
  if (thermal.zero_temperature() || omega1 == omega2) return 0.0;

  const double half = 0.5 * thermal.beta * thermal.hbar;
  const double a = half * (omega1 - omega2);
  const double b = half * omega1;
  const double c = half * omega2;
  const double abs_a = std::fabs(a);
  // sinh(y) = e^{y} (1 - e^{-2y}) / 2 for y > 0.
  const double ratio =
      2.0 * std::exp(abs_a - b - c) * one_minus_exp2(abs_a) / (one_minus_exp2(b) * one_minus_exp2(c));
  return a > 0.0 ? -ratio : ratio;
}

ResponseKernel response_kernel(const OscillatorSystem& raw) {
  const OscillatorSystem sys = validate_system(raw);
  ResponseKernel k;
  k.omega1 = sys.osc1.omega;
  k.omega2 = sys.osc2.omega;
  k.D = sys.thermal.hbar / (2.0 * sys.osc1.mass * sys.osc2.mass * k.omega1 * k.omega2);
  k.c1 = coth_factor(sys.thermal, k.omega1);
  k.c2 = coth_factor(sys.thermal, k.omega2);
  return k;
}

void eval_phi_grid(const ResponseKernel& k, std::span<const double> t, std::span<double> out, Execution exec) {
  if (t.size() != out.size()) throw std::invalid_argument("eval_phi_grid: size mismatch");
  parallel_for(static_cast<std::ptrdiff_t>(t.size()), exec, [&](std::ptrdiff_t i) { out[i] = eval_phi(k, t[i]); });
}

}  // namespace casimir
