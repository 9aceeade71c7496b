#pragma once

#include "casimir/execution.hpp"
#include "casimir/model.hpp"
#include "casimir/numerics.hpp"
#include "casimir/protocol.hpp"

namespace casimir {

enum class DissipationRoute { ClosedForm, General, LeadingOrder };

const char* to_string(DissipationRoute route);

struct DissipationResult {
  double energy = 0.0;
  DissipationRoute route = DissipationRoute::ClosedForm;
  double error_estimate = 0.0;
  // False when the protocol never returns to rest (LinearRamp). The energy is
  // then a windowed number, not a completed dissipation.
  bool terminating = true;
};

// A scalar response kernel with the fastest frequency it contains.
struct KernelFunction {
  numerics::RealFn eval;
  double omega_scale = 1.0;
};

// t -> (v . G) phi(t) = (v . grad psi)^2 phi(t), using the closed-form kernel.
KernelFunction phi_AA_from_motion(const OscillatorSystem& sys);

// The same kernel from the Fock-trace oracle, sampled every dt on [0, t_max]
// and interpolated.
KernelFunction phi_AA_from_oracle(const OscillatorSystem& sys, double t_max, double dt, double tail_tol,
                                  Execution exec = Execution::Parallel);

// (1 / 4 eta) v . F_f with the closed-form friction force. The error estimate
// is the spread between the closed-form and spectral force routes.
DissipationResult dissipation_closed_form(const OscillatorSystem& sys);

// int qdot(t) [ int phi_AA(t - t') q(t') dt' ] dt for an arbitrary causal q.
DissipationResult dissipation_general(const PerturbationProtocol& protocol, const KernelFunction& phi_AA, double eta,
                                      const numerics::QuadratureSpec& spec = {},
                                      Execution exec = Execution::Parallel);

// [-int_0^inf phi_AA(u) u e^{-eta u} du] [int qdot^2 dt], each by quadrature.
DissipationResult dissipation_leading_order(const PerturbationProtocol& protocol, const KernelFunction& phi_AA,
                                            double eta, const numerics::QuadratureSpec& spec = {},
                                            Execution exec = Execution::Parallel);

// int qdot(t)^2 dt over the protocol support; 1/(4 eta) for the damped ramp.
numerics::QuadratureResult velocity_square_integral(const PerturbationProtocol& protocol,
                                                    const numerics::QuadratureSpec& spec = {});

// int qdot(t) q(t) dt: the work of the reversible force, zero for any protocol
// that returns to rest.
double reversible_null_check(const PerturbationProtocol& protocol, const numerics::QuadratureSpec& spec = {});

}  // namespace casimir
