#pragma once

#include <string>
#include <vector>

#include "casimir/cli.hpp"
#include "casimir/dissipation.hpp"
#include "casimir/forces.hpp"

namespace casimir::cli::detail {

double relative_to(double value, double reference);
double vec_relative(Vec3 value, Vec3 reference);
Check le_check(std::string name, double value, double limit);

struct KernelSamples {
  std::vector<double> t, analytic, oracle;
  double max_abs_diff = 0.0;
  double max_rel_diff = 0.0;  // max |diff| / max |oracle|
};
KernelSamples sample_kernel(const OscillatorSystem& sys, int points, double t_max, double tail_tol,
                            Execution exec);

struct FrictionBundle {
  FrictionRoutes time_domain;
  Vec3 spectral;
  Vec3 prefactor;
  double spectral_discrepancy = 0.0;
};
FrictionBundle friction_bundle(const RunConfig& c, Execution exec);

struct DissipationBundle {
  DissipationResult closed, general, leading, fock;
  bool has_fock = false;
};
DissipationBundle dissipation_bundle(const RunConfig& c, bool with_fock, Execution exec);

}  // namespace casimir::cli::detail
