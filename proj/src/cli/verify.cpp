#include <cmath>
#include <numbers>

#include "casimir/cli.hpp"
#include "casimir/dissipation.hpp"
#include "casimir/forces.hpp"
#include "casimir/numerics.hpp"
#include "casimir/oracle.hpp"
#include "casimir/response.hpp"
#include "detail.hpp"

namespace casimir::cli {

using namespace detail;

namespace {

Check range_check(std::string name, double value, double lo, double hi) {
  return {std::move(name), value, "[" + format_double(lo) + ", " + format_double(hi) + "]", value >= lo && value <= hi};
}

Check zero_check(std::string name, double value) { return {std::move(name), value, "== 0", value == 0.0}; }

OscillatorSystem exchanged(const OscillatorSystem& s) {
  OscillatorSystem x = s;
  std::swap(x.osc1, x.osc2);
  return x;
}

// |F(eta)| / |F(eta / 2)| at T = 0; 2 for first-order vanishing.
double zero_temperature_eta_ratio(const OscillatorSystem& s) {
  OscillatorSystem a = s;
  a.thermal.beta = kZeroTemperature;
  OscillatorSystem b = a;
  b.motion.eta = a.motion.eta / 2.0;
  return norm(friction_force_closed_form(a).friction) / norm(friction_force_closed_form(b).friction);
}

}  // namespace

std::vector<Check> verify_checks(const RunConfig& c) {
  const OscillatorSystem& sys = c.system;
  const auto& spec = c.quadrature;
  const double w1 = sys.osc1.omega;
  const double w2 = sys.osc2.omega;
  const double eta = sys.motion.eta;
  const auto exec = Execution::Parallel;
  std::vector<Check> out;

  // kernel
  const auto k = sample_kernel(sys, 50, 20.0 / w1, c.tail_tol, exec);
  out.push_back(le_check("kernel_vs_oracle", k.max_rel_diff, 1e-8));
  const double occ = oracle::occupation(sys.thermal, sys.osc1, c.tail_tol);
  const double coth1 = coth_factor(sys.thermal, w1);
  // Cutting the geometric series at N shifts 2<n> + 1 by 2 N x^N / (1 - x^N), x^N < tail_tol.
  const int n_max = oracle::choose_truncation(sys.thermal, sys.osc1, c.tail_tol);
  out.push_back(le_check("occupation_vs_coth", relative_to(2.0 * occ + 1.0, coth1),
                         2.0 * n_max * c.tail_tol / (1.0 - c.tail_tol)));
  {
    const auto kernel = response_kernel(sys);
    const auto swapped = response_kernel(exchanged(sys));
    double worst = 0.0;
    for (double t : k.t) worst = std::fmax(worst, std::fabs(eval_phi(kernel, t) - eval_phi(swapped, t)));
    out.push_back(le_check("kernel_exchange_symmetry", worst / (kernel.D * (kernel.c1 + kernel.c2)), 1e-15));
  }

  // moments
  {
    auto first = [&](double t) { return t * std::exp(-eta * t) * std::cos(w1 * t) * std::sin(w2 * t); };
    auto zeroth = [&](double t) { return std::exp(-eta * t) * std::cos(w1 * t) * std::sin(w2 * t); };
    const double q1 = numerics::integrate_semi_infinite_damped(first, eta, w1 + w2, spec, exec);
    const double q0 = numerics::integrate_semi_infinite_damped(zeroth, eta, w1 + w2, spec, exec);
    out.push_back(le_check("first_moment_identity", relative_to(q1, numerics::first_moment_closed_form(w1, w2, eta)), 1e-8));
    out.push_back(le_check("zeroth_moment_identity", relative_to(q0, numerics::zeroth_moment_closed_form(w1, w2, eta)), 1e-8));
    double worst = 0.0;
    for (double e : {1e-6, 1e-2, 1e2})
      worst = std::fmax(worst, std::fabs(numerics::lorentzian_squared_norm(e, spec) - std::numbers::pi / 2.0));
    out.push_back(le_check("lorentzian_norm", worst, 1e-10));
  }

  // damped ramp
  const auto ramp = damped_ramp(eta);
  out.push_back(le_check("velocity_square_factor", relative_to(velocity_square_integral(ramp, spec).value, 0.25 / eta), 1e-10));
  out.push_back(le_check("reversible_work_null", std::fabs(reversible_null_check(ramp, spec)), spec.abs_tol));

  // friction routes
  const auto fb = friction_bundle(c, exec);
  const auto& cf = fb.time_domain.closed_form;
  out.push_back(le_check("friction_closed_vs_quadrature", fb.time_domain.discrepancy, 1e-8));
  out.push_back(le_check("friction_closed_vs_spectral", fb.spectral_discrepancy, 1e-8));
  out.push_back(le_check("friction_term_split", vec_relative(cf.omega1_term + cf.omega2_term, cf.friction), 1e-15));
  {
    const auto sk = spectral_kernel(sys);
    const double h = eta * 1e-3;
    const auto fd = (spectral_transform(sk, h) - spectral_transform(sk, -h)) / (2.0 * h);
    const auto exact = spectral_transform_derivative(sk, 0.0);
    out.push_back(le_check("spectral_derivative_fd", std::abs(fd - exact) / std::abs(exact), 1e-6));
  }

  // delta limit
  const auto delta = delta_limit(sys, 0.0, exec);
  out.push_back(le_check("delta_limit_deviation", delta.deviation, 0.02));
  if (max_abs(delta.prefactor) > 0.0) {
    OscillatorSystem half = sys;
    half.motion.eta = eta / 2.0;
    const auto delta_half = delta_limit(half, 0.0, exec);
    out.push_back(range_check("delta_limit_rate", delta.deviation / delta_half.deviation, 1.6, 2.4));
  }

  // zero temperature
  {
    OscillatorSystem cold = sys;
    cold.thermal.beta = kZeroTemperature;
    const auto f = friction_force_closed_form(cold);
    out.push_back(zero_check("zero_temperature_omega2_term", max_abs(f.omega2_term)));
    out.push_back(zero_check("zero_temperature_prefactor", max_abs(resonant_prefactor(cold))));
    const auto density = friction_spectral_density(cold, detuning_grid(0.4 * w1, eta), exec);
    double worst = 0.0;
    for (const auto& d : density.density) worst = std::fmax(worst, max_abs(d));
    out.push_back(zero_check("zero_temperature_density", worst));
    if (max_abs(f.friction) > 0.0)
      out.push_back(range_check("zero_temperature_eta_scaling", zero_temperature_eta_ratio(sys), 1.6, 2.4));
  }

  // dissipation
  const auto db = dissipation_bundle(c, true, exec);
  out.push_back(le_check("dissipation_leading_vs_closed", relative_to(db.leading.energy, db.closed.energy), 1e-8));
  out.push_back(le_check("dissipation_general_vs_closed", relative_to(db.general.energy, db.closed.energy), eta / w1));
  out.push_back(le_check("dissipation_fock_kernel", relative_to(db.fock.energy, db.general.energy), 1e-6));

  // symmetries
  {
    OscillatorSystem flipped = sys;
    flipped.motion.velocity = -sys.motion.velocity;
    const Vec3 f_minus = friction_force_closed_form(flipped).friction;
    out.push_back(le_check("friction_velocity_odd", vec_relative(-f_minus, cf.friction), 0.0));

    OscillatorSystem doubled = sys;
    doubled.motion.velocity = 2.0 * sys.motion.velocity;
    out.push_back(le_check("dissipation_velocity_quadratic",
                           relative_to(dissipation_closed_form(doubled).energy, 4.0 * db.closed.energy), 1e-15));

    out.push_back(le_check("friction_exchange_symmetry",
                           vec_relative(friction_force_closed_form(exchanged(sys)).friction, cf.friction), 1e-14));

    OscillatorSystem heavy = sys;
    heavy.osc1.mass *= 2.0;
    heavy.osc2.mass *= 3.0;
    out.push_back(le_check("friction_mass_scaling",
                           vec_relative(6.0 * friction_force_closed_form(heavy).friction, cf.friction), 1e-15));
  }
  return out;
}

}  // namespace casimir::cli
