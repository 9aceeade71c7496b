#include <algorithm>
#include <cmath>
#include <limits>

#include "casimir/cli.hpp"
#include "casimir/dissipation.hpp"
#include "casimir/forces.hpp"
#include "casimir/oracle.hpp"
#include "casimir/parallel.hpp"
#include "casimir/response.hpp"
#include "detail.hpp"

namespace casimir::cli {

namespace detail {

double relative_to(double value, double reference) {
  if (reference == 0.0) return std::fabs(value);
  return std::fabs(value - reference) / std::fabs(reference);
}

double vec_relative(Vec3 value, Vec3 reference) {
  const double scale = max_abs(reference);
  if (scale == 0.0) return max_abs(value);
  return max_abs(value - reference) / scale;
}

Check le_check(std::string name, double value, double limit) {
  return {std::move(name), value, "<= " + format_double(limit), value <= limit};
}

KernelSamples sample_kernel(const OscillatorSystem& sys, int points, double t_max, double tail_tol,
                            Execution exec) {
  KernelSamples s;
  s.t.resize(points);
  for (int i = 0; i < points; ++i) s.t[i] = t_max * i / (points - 1);
  s.analytic.resize(points);
  s.oracle.resize(points);
  eval_phi_grid(response_kernel(sys), s.t, s.analytic, exec);
  const auto ws = oracle::make_workspace(sys, tail_tol);
  oracle::phi_trace_grid(ws, s.t, s.oracle, exec);
  double scale = 0.0;
  for (int i = 0; i < points; ++i) {
    s.max_abs_diff = std::max(s.max_abs_diff, std::fabs(s.analytic[i] - s.oracle[i]));
    scale = std::max(scale, std::fabs(s.oracle[i]));
  }
  s.max_rel_diff = scale > 0.0 ? s.max_abs_diff / scale : s.max_abs_diff;
  return s;
}

FrictionBundle friction_bundle(const RunConfig& c, Execution exec) {
  FrictionBundle b;
  b.time_domain = friction_force_time_domain(c.system, c.quadrature, std::numeric_limits<double>::infinity(), exec);
  b.spectral = friction_force_spectral(c.system);
  b.prefactor = resonant_prefactor(c.system);
  b.spectral_discrepancy = vec_relative(b.spectral, b.time_domain.closed_form.friction);
  return b;
}

DissipationBundle dissipation_bundle(const RunConfig& c, bool with_fock, Execution exec) {
  const double eta = c.system.motion.eta;
  const auto protocol = damped_ramp(eta);
  const auto kernel = phi_AA_from_motion(c.system);
  DissipationBundle b;
  b.closed = dissipation_closed_form(c.system);
  b.general = dissipation_general(protocol, kernel, eta, c.quadrature, exec);
  b.leading = dissipation_leading_order(protocol, kernel, eta, c.quadrature, exec);
  if (with_fock) {
    const double dt = std::min(0.05, 0.25 / (c.system.osc1.omega + c.system.osc2.omega));
    const auto fock = phi_AA_from_oracle(c.system, 40.0 / eta + 10.0 * dt, dt, c.tail_tol, exec);
    b.fock = dissipation_general(protocol, fock, eta, c.quadrature, exec);
    b.has_fock = true;
  }
  return b;
}

}  // namespace detail

namespace {

using namespace detail;

std::vector<Value> row_of(std::initializer_list<Value> v) { return v; }

// One named group of scalar outputs; used for both single runs and sweep rows.
struct Summary {
  std::vector<std::string> columns;
  std::vector<double> values;
  void add(std::string name, double v) {
    columns.push_back(std::move(name));
    values.push_back(v);
  }
  void add(const std::string& name, Vec3 v) {
    add(name + "_x", v.x);
    add(name + "_y", v.y);
    add(name + "_z", v.z);
  }
};

Summary summarize(Command quantity, const RunConfig& c, Execution exec) {
  Summary s;
  switch (quantity) {
    case Command::Kernel: {
      const auto k = sample_kernel(c.system, 50, c.t_max, c.tail_tol, exec);
      s.add("max_abs_diff", k.max_abs_diff);
      s.add("max_rel_diff", k.max_rel_diff);
      break;
    }
    case Command::Friction: {
      const auto b = friction_bundle(c, exec);
      s.add("friction", b.time_domain.closed_form.friction);
      s.add("omega1_term", b.time_domain.closed_form.omega1_term);
      s.add("omega2_term", b.time_domain.closed_form.omega2_term);
      s.add("spectral", b.spectral);
      s.add("resonant_prefactor", b.prefactor);
      s.add("quadrature_discrepancy", b.time_domain.discrepancy);
      s.add("spectral_discrepancy", b.spectral_discrepancy);
      break;
    }
    case Command::SpectralDensity: {
      const auto d = delta_limit(c.system, 0.0, exec);
      s.add("grid_integral", d.grid_integral);
      s.add("resonant_prefactor", d.prefactor);
      s.add("relative_deviation", d.deviation);
      break;
    }
    case Command::Dissipation: {
      const auto b = dissipation_bundle(c, false, exec);
      s.add("closed_form", b.closed.energy);
      s.add("general", b.general.energy);
      s.add("leading_order", b.leading.energy);
      s.add("general_deviation", relative_to(b.general.energy, b.closed.energy));
      s.add("leading_order_deviation", relative_to(b.leading.energy, b.closed.energy));
      break;
    }
    default:
      throw ConfigError("quantity", "cannot be summarized");
  }
  return s;
}

Table vector_table(std::string name, const std::vector<std::pair<std::string, Vec3>>& rows) {
  Table t{std::move(name), {"quantity", "x", "y", "z"}, {}};
  for (const auto& [label, v] : rows) t.rows.push_back(row_of({label, v.x, v.y, v.z}));
  return t;
}

RunConfig at_axis_value(const RunConfig& base, double x) {
  RunConfig c = base;
  switch (base.axis) {
    case SweepAxis::Beta: c.system.thermal.beta = x; break;
    case SweepAxis::Eta: c.system.motion.eta = x; break;
    case SweepAxis::Omega2: c.system.osc2.omega = x; break;
    case SweepAxis::VelocityMagnitude: {
      const Vec3 v = base.system.motion.velocity;
      const double n = norm(v);
      c.system.motion.velocity = n > 0.0 ? (x / n) * v : Vec3{0, 0, x};
      break;
    }
  }
  return c;
}

}  // namespace

Report run_kernel(const RunConfig& c) {
  Report r{describe(c), {}, {}};
  const auto k = sample_kernel(c.system, c.points, c.t_max, c.tail_tol, Execution::Parallel);
  Table t{"kernel", {"t", "phi_analytic", "phi_oracle", "abs_diff"}, {}};
  for (std::size_t i = 0; i < k.t.size(); ++i)
    t.rows.push_back(row_of({k.t[i], k.analytic[i], k.oracle[i], std::fabs(k.analytic[i] - k.oracle[i])}));
  r.tables.push_back(std::move(t));
  r.checks.push_back(le_check("kernel_vs_oracle", k.max_rel_diff, 1e-8));
  return r;
}

Report run_friction(const RunConfig& c) {
  Report r{describe(c), {}, {}};
  const auto b = friction_bundle(c, Execution::Parallel);
  const auto& cf = b.time_domain.closed_form;
  r.tables.push_back(vector_table("forces", {
                                                {"friction", cf.friction},
                                                {"omega1_term", cf.omega1_term},
                                                {"omega2_term", cf.omega2_term},
                                                {"reversible_coefficient", cf.reversible_coefficient},
                                                {"friction_quadrature", b.time_domain.quadrature},
                                                {"friction_spectral", b.spectral},
                                                {"resonant_prefactor", b.prefactor},
                                            }));
  r.checks.push_back(le_check("friction_closed_vs_quadrature", b.time_domain.discrepancy, 1e-8));
  r.checks.push_back(le_check("friction_closed_vs_spectral", b.spectral_discrepancy, 1e-8));
  return r;
}

Report run_spectral_density(const RunConfig& c) {
  Report r{describe(c), {}, {}};
  const double half_width = 0.4 * c.system.osc1.omega;
  const auto grid = detuning_grid(half_width, c.system.motion.eta);
  const auto samples = friction_spectral_density(c.system, grid, Execution::Parallel);
  Table t{"density", {"detuning", "omega2", "density_x", "density_y", "density_z"}, {}};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec3 d = samples.density[i];
    t.rows.push_back(row_of({grid[i], c.system.osc1.omega - grid[i], d.x, d.y, d.z}));
  }
  r.tables.push_back(std::move(t));
  const auto d = delta_limit(c.system, half_width, Execution::Parallel);
  r.tables.push_back(vector_table("normalization", {{"grid_integral", d.grid_integral}, {"resonant_prefactor", d.prefactor}}));
  r.tables.push_back({"delta_limit",
                      {"points", "half_width", "relative_deviation"},
                      {row_of({static_cast<double>(d.points), d.half_width, d.deviation})}});
  return r;
}

Report run_dissipation(const RunConfig& c) {
  Report r{describe(c), {}, {}};
  const auto b = dissipation_bundle(c, true, Execution::Parallel);
  Table t{"dissipation", {"route", "energy", "error_estimate", "deviation_from_closed_form"}, {}};
  auto add = [&](const std::string& name, const DissipationResult& d) {
    t.rows.push_back(row_of({name, d.energy, d.error_estimate, relative_to(d.energy, b.closed.energy)}));
  };
  add("closed_form", b.closed);
  add("general", b.general);
  add("general_fock_kernel", b.fock);
  add("leading_order", b.leading);
  r.tables.push_back(std::move(t));
  const double eta_ratio = c.system.motion.eta / c.system.osc1.omega;
  r.checks.push_back(le_check("leading_order_vs_closed_form", relative_to(b.leading.energy, b.closed.energy), 1e-8));
  r.checks.push_back(le_check("general_vs_closed_form", relative_to(b.general.energy, b.closed.energy), eta_ratio));
  r.checks.push_back(le_check("fock_kernel_vs_analytic_kernel", relative_to(b.fock.energy, b.general.energy), 1e-6));
  return r;
}

Report run_sweep(const RunConfig& c) {
  Report r{describe(c), {}, {}};
  const int n = c.points;
  std::vector<double> axis(n);
  for (int i = 0; i < n; ++i) axis[i] = i + 1 == n ? c.to : c.from + (c.to - c.from) * i / (n - 1);
  std::vector<RunConfig> configs;
  for (double x : axis) {
    RunConfig point = at_axis_value(c, x);
    validate(point);
    configs.push_back(std::move(point));
  }
  std::vector<Summary> rows(n);
  parallel_for(n, Execution::Parallel,
               [&](std::ptrdiff_t i) { rows[i] = summarize(c.quantity, configs[i], Execution::Serial); });
  Table t{"sweep", {to_string(c.axis)}, {}};
  t.columns.insert(t.columns.end(), rows.front().columns.begin(), rows.front().columns.end());
  for (int i = 0; i < n; ++i) {
    std::vector<Value> row{axis[i]};
    for (double v : rows[i].values) row.emplace_back(v);
    t.rows.push_back(std::move(row));
  }
  r.tables.push_back(std::move(t));
  return r;
}

Report run_verify(const RunConfig& c) {
  Report r{describe(c), {}, {}};
  r.checks = verify_checks(c);
  return r;
}

Report execute(const RunConfig& c) {
  switch (c.command) {
    case Command::Kernel: return run_kernel(c);
    case Command::Friction: return run_friction(c);
    case Command::SpectralDensity: return run_spectral_density(c);
    case Command::Dissipation: return run_dissipation(c);
    case Command::Sweep: return run_sweep(c);
    case Command::Verify: return run_verify(c);
  }
  throw ConfigError("command", "unknown command");
}

}  // namespace casimir::cli
