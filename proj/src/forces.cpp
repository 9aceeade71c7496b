#include "casimir/forces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "casimir/errors.hpp"
#include "casimir/parallel.hpp"
#include "casimir/response.hpp"

namespace casimir {

namespace {

constexpr double kSpectralImagTol = 1e-12;

double relative_discrepancy(Vec3 ref, Vec3 other) {
  const double scale = max_abs(ref);
  if (scale == 0.0) return max_abs(other);
  return max_abs(ref - other) / scale;
}

// c2 - c1 in cancellation-free form.
double coth_gap(const ThermalState& thermal, double omega1, double omega2) {
  return -coth_difference(thermal, omega1, omega2);
}

}  // namespace

Vec3 geometry_factor(const CouplingGeometry& coupling, Vec3 velocity) {
  return dot(velocity, coupling.grad_psi) * coupling.grad_psi;
}

Vec3 reversible_force(const OscillatorSystem& raw, double t) {
  const OscillatorSystem sys = validate_system(raw);
  const ResponseKernel k = response_kernel(sys);
  const double eta = sys.motion.eta;
  const double moment = k.D * (k.c1 * numerics::zeroth_moment_closed_form(k.omega1, k.omega2, eta) +
                               k.c2 * numerics::zeroth_moment_closed_form(k.omega2, k.omega1, eta));
  return (t * moment) * geometry_factor(sys.coupling, sys.motion.velocity);
}

ForceDecomposition friction_force_closed_form(const OscillatorSystem& raw) {
  const OscillatorSystem sys = validate_system(raw);
  const ResponseKernel k = response_kernel(sys);
  const double eta = sys.motion.eta;
  const Vec3 g = geometry_factor(sys.coupling, sys.motion.velocity);

  const double sum_term = (k.c1 + k.c2) * numerics::damped_lorentzian_moment(k.omega1 + k.omega2, eta);
  // (c2 - c1) and W2 both vanish on resonance; coth_gap returns an exact 0 there.
  const double diff_term =
      coth_gap(sys.thermal, k.omega1, k.omega2) * numerics::damped_lorentzian_moment(k.omega1 - k.omega2, eta);

  ForceDecomposition out;
  out.omega1_term = (-k.D * sum_term) * g;
  out.omega2_term = (-k.D * diff_term) * g;
  out.friction = out.omega1_term + out.omega2_term;
  const double zeroth = k.D * (k.c1 * numerics::zeroth_moment_closed_form(k.omega1, k.omega2, eta) +
                               k.c2 * numerics::zeroth_moment_closed_form(k.omega2, k.omega1, eta));
  out.reversible_coefficient = zeroth * g;
  return out;
}

numerics::QuadratureResult friction_moment_quadrature(const OscillatorSystem& raw, const numerics::QuadratureSpec& spec,
                                                      Execution exec) {
  const OscillatorSystem sys = validate_system(raw);
  const ResponseKernel k = response_kernel(sys);
  const double eta = sys.motion.eta;
  auto integrand = [&k, eta](double u) { return u * std::exp(-eta * u) * eval_phi(k, u); };
  return numerics::integrate_semi_infinite_damped_estimate(integrand, eta, k.omega1 + k.omega2, spec, exec);
}

FrictionRoutes friction_force_time_domain(const OscillatorSystem& raw, const numerics::QuadratureSpec& spec,
                                          double agreement_tol, Execution exec) {
  const OscillatorSystem sys = validate_system(raw);
  FrictionRoutes out;
  out.closed_form = friction_force_closed_form(sys);
  const Vec3 g = geometry_factor(sys.coupling, sys.motion.velocity);
  const numerics::QuadratureResult moment = friction_moment_quadrature(sys, spec, exec);
  out.quadrature = (-moment.value) * g;
  out.quadrature_error = moment.error * max_abs(g);
  out.discrepancy = relative_discrepancy(out.closed_form.friction, out.quadrature);
  if (out.discrepancy > agreement_tol)
    throw ConsistencyError("friction routes disagree: closed form vs quadrature relative discrepancy " +
                           std::to_string(out.discrepancy));
  return out;
}

SpectralKernel spectral_kernel(const OscillatorSystem& raw) {
  const OscillatorSystem sys = validate_system(raw);
  const ResponseKernel k = response_kernel(sys);
  SpectralKernel out;
  out.eta = sys.motion.eta;
  // c cos(a t) sin(b t) = (c / 4i)[e^{i(a+b)t} - e^{i(a-b)t} + e^{-i(a-b)t} - e^{-i(a+b)t}]
  auto add_term = [&out](double c, double a, double b) {
    const double q = 0.25 * c;
    out.poles.push_back({q, a + b});
    out.poles.push_back({-q, a - b});
    out.poles.push_back({q, -(a - b)});
    out.poles.push_back({-q, -(a + b)});
  };
  add_term(k.D * k.c1, k.omega1, k.omega2);
  add_term(k.D * k.c2, k.omega2, k.omega1);
  return out;
}

std::complex<double> spectral_transform(const SpectralKernel& k, double omega) {
  const std::complex<double> minus_i(0.0, -1.0);
  std::complex<double> sum = 0.0;
  for (const auto& p : k.poles) sum += minus_i * p.amplitude / std::complex<double>(k.eta, omega - p.lambda);
  return sum;
}

std::complex<double> spectral_transform_derivative(const SpectralKernel& k, double omega) {
  std::complex<double> sum = 0.0;
  for (const auto& p : k.poles) {
    const std::complex<double> d(k.eta, omega - p.lambda);
    sum -= p.amplitude / (d * d);
  }
  return sum;
}

Vec3 friction_force_spectral(const OscillatorSystem& raw) {
  const OscillatorSystem sys = validate_system(raw);
  const SpectralKernel k = spectral_kernel(sys);
  // -i dphi~/dw at 0, accumulated with a magnitude scale for the realness check.
  std::complex<double> value = 0.0;
  double magnitude = 0.0;
  for (const auto& p : k.poles) {
    const std::complex<double> d(k.eta, -p.lambda);
    const std::complex<double> term = std::complex<double>(0.0, 1.0) * p.amplitude / (d * d);
    value += term;
    magnitude += std::abs(term);
  }
  if (std::fabs(value.imag()) > kSpectralImagTol * magnitude)
    throw ConsistencyError("spectral friction route: non-real residue " + std::to_string(value.imag()));
  return value.real() * geometry_factor(sys.coupling, sys.motion.velocity);
}

Vec3 resonant_prefactor(const OscillatorSystem& raw) {
  const OscillatorSystem sys = validate_system(raw);
  if (sys.thermal.zero_temperature()) return {};
  const double beta = sys.thermal.beta;
  const double hbar = sys.thermal.hbar;
  const double w1 = sys.osc1.omega;
  const double x = 0.5 * beta * hbar * w1;
  // 1 / sinh^2(x) = 4 e^{-2x} / (1 - e^{-2x})^2
  const double one_minus = -std::expm1(-2.0 * x);
  const double inv_sinh2 = 4.0 * std::exp(-2.0 * x) / (one_minus * one_minus);
  const double scalar =
      -std::numbers::pi * beta * hbar * hbar * inv_sinh2 / (8.0 * sys.osc1.mass * sys.osc2.mass * w1 * w1);
  return scalar * geometry_factor(sys.coupling, sys.motion.velocity);
}

SpectralDensitySamples friction_spectral_density(const OscillatorSystem& raw, std::span<const double> grid,
                                                 Execution exec) {
  const OscillatorSystem sys = validate_system(raw);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i + 1] > grid[i])) throw ValidationError("grid", "must be strictly ascending");
  const double w1 = sys.osc1.omega;
  if (!grid.empty() && !(w1 - grid.back() > 0.0))
    throw ValidationError("grid", "detuning must stay below omega1 so that omega2 = omega1 - detuning > 0");

  SpectralDensitySamples out;
  out.eta = sys.motion.eta;
  out.grid.assign(grid.begin(), grid.end());
  out.density.resize(grid.size());
  const Vec3 g = geometry_factor(sys.coupling, sys.motion.velocity);
  const double eta = sys.motion.eta;
  parallel_for(static_cast<std::ptrdiff_t>(grid.size()), exec, [&](std::ptrdiff_t i) {
    const double detuning = grid[i];
    const double w2 = w1 - detuning;
    const double d = sys.thermal.hbar / (2.0 * sys.osc1.mass * sys.osc2.mass * w1 * w2);
    const double gap = coth_gap(sys.thermal, w1, w2);
    out.density[i] = (-d * gap * numerics::damped_lorentzian_moment(detuning, eta)) * g;
  });
  return out;
}

std::vector<double> detuning_grid(double half_width, double eta, int min_points) {
  if (!(half_width > 0.0)) throw ValidationError("half_width", "must be positive");
  if (!(eta > 0.0)) throw ValidationError("eta", "must be positive");
  const double needed = std::ceil(2.0 * half_width / (eta / 25.0)) + 1.0;
  auto n = static_cast<std::ptrdiff_t>(std::max<double>(min_points, needed));
  if (n % 2 == 0) ++n;
  const std::ptrdiff_t mid = (n - 1) / 2;
  const double step = half_width / static_cast<double>(mid);
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (std::ptrdiff_t i = 0; i < n; ++i) grid[i] = static_cast<double>(i - mid) * step;
  grid.back() = half_width;
  grid.front() = -half_width;
  return grid;
}

Vec3 integrate_density(const SpectralDensitySamples& s) {
  std::vector<double> px, py, pz;
  for (std::size_t i = 0; i + 1 < s.grid.size(); ++i) {
    const double h = 0.5 * (s.grid[i + 1] - s.grid[i]);
    const Vec3 piece = h * (s.density[i] + s.density[i + 1]);
    px.push_back(piece.x);
    py.push_back(piece.y);
    pz.push_back(piece.z);
  }
  return {numerics::pairwise_sum(px), numerics::pairwise_sum(py), numerics::pairwise_sum(pz)};
}


DeltaLimit delta_limit(const OscillatorSystem& raw, double half_width, Execution exec) {
  const OscillatorSystem sys = validate_system(raw);
  if (half_width == 0.0) half_width = 0.4 * sys.osc1.omega;
  DeltaLimit out;
  out.half_width = half_width;
  const auto grid = detuning_grid(half_width, sys.motion.eta);
  out.points = grid.size();
  out.grid_integral = integrate_density(friction_spectral_density(sys, grid, exec));
  out.prefactor = resonant_prefactor(sys);
  out.deviation = relative_discrepancy(out.prefactor, out.grid_integral);
  return out;
}

}  // namespace casimir
