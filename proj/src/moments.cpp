#include <cmath>
#include <numbers>

#include "casimir/errors.hpp"
#include "casimir/numerics.hpp"

namespace casimir::numerics {

namespace {

void require_frequencies(double omega1, double omega2, double eta) {
  if (!(omega1 > 0.0)) throw ValidationError("omega1", "must be positive");
  if (!(omega2 > 0.0)) throw ValidationError("omega2", "must be positive");
  if (!(eta > 0.0)) throw ValidationError("eta", "must be positive");
}

}  // namespace

double damped_lorentzian_moment(double frequency, double eta) {
  const double d = eta * eta + frequency * frequency;
  return eta * frequency / (d * d);
}

double first_moment_closed_form(double omega1, double omega2, double eta) {
  require_frequencies(omega1, omega2, eta);
  return damped_lorentzian_moment(omega1 + omega2, eta) - damped_lorentzian_moment(omega1 - omega2, eta);
}

double zeroth_moment_closed_form(double omega1, double omega2, double eta) {
  require_frequencies(omega1, omega2, eta);
  const double sum = omega1 + omega2;
  const double diff = omega1 - omega2;
  return 0.5 * (sum / (eta * eta + sum * sum) - diff / (eta * eta + diff * diff));
}

double lorentzian_squared_norm(double eta, const QuadratureSpec& spec) {
  if (!(eta > 0.0)) throw ValidationError("eta", "must be positive");
  // x = eta tan(theta), dx = eta sec^2(theta) dtheta. At theta = +-pi/2 the
  // mapped integrand tends to 1, and cos(pi/2) is nonzero in floating point.
  auto mapped = [eta](double theta) {
    const double c = std::cos(theta);
    const double x = eta * std::tan(theta);
    return lorentzian_squared_density(x, eta) * eta / (c * c);
  };
  const double half = 0.5 * std::numbers::pi;
  return integrate_finite(mapped, -half, half, std::numbers::pi / 16.0, spec, Execution::Serial).value;
}

}  // namespace casimir::numerics
