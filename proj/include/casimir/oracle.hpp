#pragma once

#include <Eigen/Dense>
#include <span>

#include "casimir/execution.hpp"
#include "casimir/model.hpp"

namespace casimir::oracle {

// Brute-force phi(t) = Tr{rho C(t)}, C(t) = (1/i hbar)[x1 x2, x1(t) x2(t)],
// on a truncated product Fock basis. Nothing here reuses the closed form.
//
// Levels 0..n_max-1 carry Boltzmann weight; the position matrices have one
// extra level so every populated state has both of its x matrix elements.
struct FockWorkspace {
  int n_max1 = 0;
  int n_max2 = 0;
  Eigen::MatrixXd x1_elems;  // (n_max1 + 1)^2, symmetric tridiagonal, zero diagonal
  Eigen::MatrixXd x2_elems;
  Eigen::VectorXd weights1;  // n_max1 entries, sums to 1
  Eigen::VectorXd weights2;
  double omega1 = 0.0;
  double omega2 = 0.0;
  double hbar = 1.0;
};

// Smallest n with exp(-beta hbar omega n) < tail_tol; 2 at zero temperature.
int choose_truncation(const ThermalState& thermal, const Oscillator& osc, double tail_tol);

// Total Boltzmann weight of the levels >= n_max that a truncation drops.
double tail_weight(const ThermalState& thermal, const Oscillator& osc, int n_max);

// <m|x|n> in the energy basis, dim x dim.
Eigen::MatrixXd position_matrix(double hbar, const Oscillator& osc, int dim);

// Normalized Boltzmann probabilities of levels 0..n_max-1.
Eigen::VectorXd boltzmann_weights(const ThermalState& thermal, const Oscillator& osc, int n_max);

FockWorkspace make_workspace(const OscillatorSystem& sys, double tail_tol);
FockWorkspace make_workspace(const OscillatorSystem& sys, int n_max1, int n_max2);

double phi_trace(const FockWorkspace& ws, double t);

// Builds a workspace from tail_tol and evaluates one point.
double phi_trace(const OscillatorSystem& sys, double t, double tail_tol);

// Throws ValidationError if either truncation drops weight >= tail_tol.
void require_tail(const FockWorkspace& ws, const OscillatorSystem& sys, double tail_tol);

// out[i] = phi_trace(ws, t[i]).
void phi_trace_grid(const FockWorkspace& ws, std::span<const double> t, std::span<double> out,
                    Execution exec = Execution::Parallel);

// <n> over the truncated Boltzmann distribution.
double occupation(const ThermalState& thermal, const Oscillator& osc, double tail_tol);

}  // namespace casimir::oracle
