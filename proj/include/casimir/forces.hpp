#pragma once

#include <complex>
#include <span>
#include <vector>

#include "casimir/execution.hpp"
#include "casimir/model.hpp"
#include "casimir/numerics.hpp"

namespace casimir {

// Friction force split by Lorentzian, plus the reversible coefficient
// G int_0^inf phi(u) e^{-eta u} du. friction == omega1_term + omega2_term.
struct ForceDecomposition {
  Vec3 friction;
  Vec3 omega1_term;  // from the W1 = w1 + w2 Lorentzian, survives at T = 0
  Vec3 omega2_term;  // from the W2 = w1 - w2 Lorentzian, carries coth(w1) - coth(w2)
  Vec3 reversible_coefficient;
};

// The time-domain routes side by side.
struct FrictionRoutes {
  ForceDecomposition closed_form;
  Vec3 quadrature;
  double quadrature_error = 0.0;  // error estimate of the scalar first moment times |G|
  double discrepancy = 0.0;       // max component |closed - quadrature| / max|closed|
};

// G = grad psi (v . grad psi).
Vec3 geometry_factor(const CouplingGeometry& coupling, Vec3 velocity);

// G t int_0^inf phi(u) e^{-eta u} du: tracks the displacement v t.
Vec3 reversible_force(const OscillatorSystem& sys, double t);

// -G int_0^inf phi(u) u e^{-eta u} du assembled from the moment closed forms.
// The reference route; c2 - c1 comes from coth_difference.
ForceDecomposition friction_force_closed_form(const OscillatorSystem& sys);

// The same first moment by quadrature over eval_phi.
numerics::QuadratureResult friction_moment_quadrature(const OscillatorSystem& sys,
                                                      const numerics::QuadratureSpec& spec = {},
                                                      Execution exec = Execution::Parallel);

// Both time-domain routes; throws ConsistencyError if they differ by more than
// agreement_tol relative.
FrictionRoutes friction_force_time_domain(const OscillatorSystem& sys, const numerics::QuadratureSpec& spec = {},
                                          double agreement_tol = 1e-8, Execution exec = Execution::Parallel);

// Damped Fourier transform phi~(w) = int_0^inf phi(t) e^{-i w t} e^{-eta t} dt as
// a sum of simple poles. Exposed for the finite-difference check.
struct SpectralKernel {
  struct Pole {
    double amplitude;  // coefficient a of e^{i lambda t} / i in phi(t)
    double lambda;
  };
  std::vector<Pole> poles;
  double eta = 0.0;
};
SpectralKernel spectral_kernel(const OscillatorSystem& sys);
std::complex<double> spectral_transform(const SpectralKernel& k, double omega);
std::complex<double> spectral_transform_derivative(const SpectralKernel& k, double omega);

// -i G dphi~/dw at w = 0. Throws ConsistencyError if the assembled value is
// not real to 1e-12 relative.
Vec3 friction_force_spectral(const OscillatorSystem& sys);

// Coefficient of delta(w1 - w2):
//   -pi beta hbar^2 G / (8 m1 m2 w1^2 sinh^2(beta hbar w1 / 2)); zero at T = 0.
Vec3 resonant_prefactor(const OscillatorSystem& sys);

struct SpectralDensitySamples {
  std::vector<double> grid;    // detuning W2 = w1 - w2, ascending
  std::vector<Vec3> density;   // force per unit frequency
  double eta = 0.0;
};

// W2 term of the finite-eta closed form at each detuning, with w2 = w1 - W2.
// Its integral over W2 tends to resonant_prefactor as eta -> 0.
SpectralDensitySamples friction_spectral_density(const OscillatorSystem& sys, std::span<const double> grid,
                                                 Execution exec = Execution::Parallel);

// Uniform detuning grid on [-half_width, half_width] with spacing <= eta / 25
// and at least min_points points. Always has an odd count so 0 is a node.
std::vector<double> detuning_grid(double half_width, double eta, int min_points = 101);

// Trapezoid integral of the density over its grid.
Vec3 integrate_density(const SpectralDensitySamples& samples);

// Grid integral of the density on detuning_grid(half_width, eta) next to the
// resonant prefactor it approaches. half_width = 0 means 0.4 omega1.
struct DeltaLimit {
  Vec3 grid_integral;
  Vec3 prefactor;
  double deviation = 0.0;  // max component |integral - prefactor| / max|prefactor|
  double half_width = 0.0;
  std::size_t points = 0;
};
DeltaLimit delta_limit(const OscillatorSystem& sys, double half_width = 0.0, Execution exec = Execution::Parallel);

}  // namespace casimir
