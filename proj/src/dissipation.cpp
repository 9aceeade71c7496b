#include "casimir/dissipation.hpp"

#include <cmath>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/forces.hpp"
#include "casimir/oracle.hpp"
#include "casimir/response.hpp"

namespace casimir {

namespace {

void require_eta(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw ValidationError("eta", "must be positive and finite");
}

// Integral of f over the support of a protocol. Damped ramps are integrated
// on [0, inf) with their own decay rate; compact supports directly.
numerics::QuadratureResult integrate_over_support(const PerturbationProtocol& p, const numerics::RealFn& f,
                                                  const numerics::QuadratureSpec& spec) {
  const double begin = p.support_start();
  if (p.kind() == PerturbationProtocol::Kind::DampedRamp) {
    // Shift so the sweep starts at 0 and the nodes stay dyadic.
    auto shifted = [&](double s) { return f(s + begin); };
    const double rate = 1.0 / p.time_scale();
    return numerics::integrate_semi_infinite_damped_estimate(shifted, rate, rate, spec, Execution::Serial);
  }
  const std::vector<double> cuts = p.breakpoints();
  return numerics::integrate_piecewise(f, cuts, p.time_scale(), spec);
}

}  // namespace

const char* to_string(DissipationRoute route) {
  switch (route) {
    case DissipationRoute::ClosedForm:
      return "closed_form";
    case DissipationRoute::General:
      return "general";
    case DissipationRoute::LeadingOrder:
      return "leading_order";
  }
  return "unknown";
}

KernelFunction phi_AA_from_motion(const OscillatorSystem& raw) {
  const OscillatorSystem sys = validate_system(raw);
  const ResponseKernel k = response_kernel(sys);
  const double vg = dot(sys.motion.velocity, geometry_factor(sys.coupling, sys.motion.velocity));
  return {[k, vg](double t) { return vg * eval_phi(k, t); }, k.omega1 + k.omega2};
}

KernelFunction phi_AA_from_oracle(const OscillatorSystem& raw, double t_max, double dt, double tail_tol,
                                  Execution exec) {
  const OscillatorSystem sys = validate_system(raw);
  if (!(t_max > 0.0)) throw ValidationError("t_max", "must be positive");
  if (!(dt > 0.0)) throw ValidationError("dt", "must be positive");
  const oracle::FockWorkspace ws = oracle::make_workspace(sys, tail_tol);
  oracle::require_tail(ws, sys, tail_tol);

  const auto n = static_cast<std::size_t>(std::ceil(t_max / dt)) + 1;
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i) * dt;
  std::vector<double> values(n);
  oracle::phi_trace_grid(ws, t, values, exec);
  const double vg = dot(sys.motion.velocity, geometry_factor(sys.coupling, sys.motion.velocity));
  for (double& v : values) v *= vg;
  numerics::SampledFunction sampled(0.0, dt, std::move(values));
  return {[sampled = std::move(sampled)](double u) { return sampled(u); }, sys.osc1.omega + sys.osc2.omega};
}

DissipationResult dissipation_closed_form(const OscillatorSystem& raw) {
  const OscillatorSystem sys = validate_system(raw);
  const Vec3 v = sys.motion.velocity;
  const double quarter = 1.0 / (4.0 * sys.motion.eta);
  const Vec3 closed = friction_force_closed_form(sys).friction;
  const Vec3 spectral = friction_force_spectral(sys);
  DissipationResult out;
  out.route = DissipationRoute::ClosedForm;
  out.energy = quarter * dot(v, closed);
  out.error_estimate = quarter * std::fabs(dot(v, closed - spectral));
  return out;
}

DissipationResult dissipation_general(const PerturbationProtocol& protocol, const KernelFunction& phi_AA, double eta,
                                      const numerics::QuadratureSpec& spec, Execution exec) {
  require_eta(eta);
  const numerics::QuadratureResult r =
      numerics::nested_response_integral(protocol, phi_AA.eval, eta, phi_AA.omega_scale, spec, exec);
  DissipationResult out;
  out.route = DissipationRoute::General;
  out.energy = r.value;
  out.error_estimate = r.error;
  out.terminating = protocol.terminates();
  return out;
}

numerics::QuadratureResult velocity_square_integral(const PerturbationProtocol& protocol,
                                                    const numerics::QuadratureSpec& spec) {
  return integrate_over_support(
      protocol, [&](double t) { return protocol.qdot(t) * protocol.qdot(t); }, spec);
}

DissipationResult dissipation_leading_order(const PerturbationProtocol& protocol, const KernelFunction& phi_AA,
                                            double eta, const numerics::QuadratureSpec& spec, Execution exec) {
  require_eta(eta);
  auto moment_integrand = [&](double u) { return phi_AA.eval(u) * u * std::exp(-eta * u); };
  const numerics::QuadratureResult moment =
      numerics::integrate_semi_infinite_damped_estimate(moment_integrand, eta, phi_AA.omega_scale, spec, exec);
  const numerics::QuadratureResult velocity = velocity_square_integral(protocol, spec);
  DissipationResult out;
  out.route = DissipationRoute::LeadingOrder;
  out.energy = -moment.value * velocity.value;
  out.error_estimate = std::fabs(moment.value) * velocity.error + std::fabs(velocity.value) * moment.error;
  out.terminating = protocol.terminates();
  return out;
}

double reversible_null_check(const PerturbationProtocol& protocol, const numerics::QuadratureSpec& spec) {
  return integrate_over_support(
             protocol, [&](double t) { return protocol.qdot(t) * protocol.q(t); }, spec)
      .value;
}

}  // namespace casimir
