#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "casimir/execution.hpp"
#include "casimir/protocol.hpp"

namespace casimir::numerics {

using RealFn = std::function<double(double)>;

struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-9;
  int max_subdivisions = 1 << 22;  // cap on the number of panels
};

void validate(const QuadratureSpec& spec);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;           // sum of per-panel estimates, plus any tail bound
  double abs_integral = 0.0;    // estimate of the integral of |f|
  std::size_t evaluations = 0;
  // The tolerance could not be met only because the per-panel estimates hit
  // the floating-point floor (50 eps times the integral of |f|).
  bool roundoff_limited = false;
};

// Pairwise summation in a fixed order; the reduction every parallel kernel uses.
double pairwise_sum(std::span<const double> values);

// Largest power of two not exceeding width.
double dyadic_floor(double width);

// Integral of f over [a, b]. The interval is cut into panels of the dyadic
// width dyadic_floor(max_panel_width), each integrated with Romberg
// extrapolation (17 points first, refined up to 4097 where the error budget
// requires). With a dyadic width and a = 0 every node is an exact double.
QuadratureResult integrate_finite(const RealFn& f, double a, double b, double max_panel_width,
                                  const QuadratureSpec& spec, Execution exec = Execution::Parallel);

// Sum of integrate_finite over consecutive intervals [cuts[i], cuts[i + 1]] of
// an ascending list, so kinks of f at the cuts never fall inside a panel.
// Serial; meant for inner integrals.
QuadratureResult integrate_piecewise(const RealFn& f, std::span<const double> cuts, double max_panel_width,
                                     const QuadratureSpec& spec);

// Integral over [0, inf) of f, where |f| <= poly(t) e^{-eta t} and omega_scale
// is the fastest oscillation in f. Panels are at most pi / (4 omega_scale)
// wide (>= 8 per period) and the range is cut at 40 / eta; the analytic tail
// bound 2 M e^{-eta T}(T/eta + 1/eta^2) beyond the cut is added to the error
// and the cut is pushed out (to at most 100 / eta) while it exceeds tolerance.
QuadratureResult integrate_semi_infinite_damped_estimate(const RealFn& f, double eta, double omega_scale,
                                                         const QuadratureSpec& spec,
                                                         Execution exec = Execution::Parallel);

double integrate_semi_infinite_damped(const RealFn& f, double eta, double omega_scale, const QuadratureSpec& spec,
                                      Execution exec = Execution::Parallel);

// Exact value of the damped first moment
//   int_0^inf t e^{-eta t} cos(w1 t) sin(w2 t) dt
//     = eta W1 / (eta^2 + W1^2)^2 - eta W2 / (eta^2 + W2^2)^2,
// W1 = w1 + w2, W2 = w1 - w2.
double first_moment_closed_form(double omega1, double omega2, double eta);

// Exact value of int_0^inf e^{-eta t} cos(w1 t) sin(w2 t) dt
//   = (W1 / (eta^2 + W1^2) - W2 / (eta^2 + W2^2)) / 2.
double zeroth_moment_closed_form(double omega1, double omega2, double eta);

// eta W / (eta^2 + W^2)^2, the single-frequency piece of the first moment.
double damped_lorentzian_moment(double frequency, double eta);

// int_{-inf}^{inf} eta x^2 / (eta^2 + x^2)^2 dx computed after x = eta tan(theta),
// which maps the line onto (-pi/2, pi/2) with a bounded integrand. Equals pi/2.
double lorentzian_squared_norm(double eta, const QuadratureSpec& spec = {});

// The Lorentzian-squared density itself, exposed for tests.
inline double lorentzian_squared_density(double x, double eta) {
  const double d = eta * eta + x * x;
  return eta * x * x / (d * d);
}

// int qdot(t) [ int_{-inf}^t phi(t - t') q(t') dt' ] dt for a causal protocol.
//
// Evaluated in lag order: int_0^U phi(u) R(u) du with the protocol
// autocorrelation R(u) = int qdot(s + u) q(s) ds. R is smooth on the
// protocol's time scale and is held as a piecewise Chebyshev proxy whose nodes
// are computed with tolerances 10x tighter than the outer integral. The support
// ends at min(protocol end, start + 40 / eta).
QuadratureResult nested_response_integral(const PerturbationProtocol& q, const RealFn& phi, double eta,
                                          double omega_scale, const QuadratureSpec& spec,
                                          Execution exec = Execution::Parallel);

// Same quantity in time order, inner int_0^{t - start} phi(u) q(t - u) du for
// every outer node. Quadratic cost; kept as the reference for the lag-ordered
// route and only practical for short supports.
QuadratureResult nested_response_integral_direct(const PerturbationProtocol& q, const RealFn& phi, double eta,
                                                 double omega_scale, const QuadratureSpec& spec);

// A function known on the uniform grid t0 + i dt, i < values.size(), read back
// with 8-point Lagrange interpolation. Zero outside the sampled range.
class SampledFunction {
 public:
  SampledFunction(double t0, double dt, std::vector<double> values);

  double operator()(double t) const;

  double t0() const { return t0_; }
  double dt() const { return dt_; }
  double t_end() const { return t0_ + dt_ * static_cast<double>(values_.size() - 1); }

 private:
  double t0_;
  double dt_;
  std::vector<double> values_;
};

}  // namespace casimir::numerics
