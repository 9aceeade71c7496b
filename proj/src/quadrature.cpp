#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "casimir/errors.hpp"
#include "casimir/numerics.hpp"
#include "casimir/parallel.hpp"

namespace casimir::numerics {

namespace {

constexpr int kMinLevel = 4;   // 17 points
constexpr int kMaxLevel = 12;  // 4097 points
constexpr double kRoundoffFactor = 50.0 * std::numeric_limits<double>::epsilon();
constexpr double kDefaultCut = 40.0;
constexpr double kCutStep = 10.0;
constexpr double kMaxCut = 100.0;

struct PanelResult {
  double value = 0.0;
  double error = 0.0;
  double abs_integral = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;

  // Summation noise of a Romberg level grows with its point count.
  double floor() const {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    return std::max(kRoundoffFactor, 2.0 * eps * static_cast<double>(evaluations)) * abs_integral;
  }
};

// Romberg on [lo, lo + width]. Stops at the first level >= kMinLevel whose
// diagonal difference is below max(tol, roundoff floor), or at max_level.
PanelResult romberg_panel(const RealFn& f, double lo, double width, double tol, int max_level) {
  std::array<double, kMaxLevel + 1> prev{};
  std::array<double, kMaxLevel + 1> row{};

  const double f_lo = f(lo);
  const double f_hi = f(lo + width);
  double trapezoid = 0.5 * width * (f_lo + f_hi);
  double abs_trapezoid = 0.5 * width * (std::fabs(f_lo) + std::fabs(f_hi));
  prev[0] = trapezoid;

  PanelResult out;
  out.evaluations = 2;
  for (int k = 1; k <= max_level; ++k) {
    const long steps = 1L << k;
    const double step = width / static_cast<double>(steps);
    double sum = 0.0;
    double abs_sum = 0.0;
    for (long j = 1; j < steps; j += 2) {
      const double v = f(lo + static_cast<double>(j) * step);
      sum += v;
      abs_sum += std::fabs(v);
    }
    out.evaluations += static_cast<std::size_t>(steps / 2);
    trapezoid = 0.5 * trapezoid + step * sum;
    abs_trapezoid = 0.5 * abs_trapezoid + step * abs_sum;

    row[0] = trapezoid;
    double factor = 1.0;
    for (int j = 1; j <= k; ++j) {
      factor *= 4.0;
      row[j] = row[j - 1] + (row[j - 1] - prev[j - 1]) / (factor - 1.0);
    }
    out.value = row[k];
    out.error = std::fabs(row[k] - prev[k - 1]);
    out.abs_integral = abs_trapezoid;
    if (k >= kMinLevel && out.error <= std::max(tol, out.floor())) {
      out.converged = true;
      return out;
    }
    std::swap(prev, row);
  }
  return out;
}

struct PanelGrid {
  double a;
  double width;  // dyadic
  double b;      // end of last panel
  std::ptrdiff_t count;

  double lo(std::ptrdiff_t i) const { return a + static_cast<double>(i) * width; }
  double len(std::ptrdiff_t i) const { return i + 1 == count ? b - lo(i) : width; }
};

PanelGrid make_grid(double a, double b, double max_width, const QuadratureSpec& spec) {
  PanelGrid g{a, dyadic_floor(max_width), b, 0};
  const double n = std::ceil((b - a) / g.width);
  if (n > static_cast<double>(spec.max_subdivisions))
    throw QuadratureError("single", std::numeric_limits<double>::infinity(),
                          "interval needs " + std::to_string(static_cast<long long>(n)) +
                              " panels, above max_subdivisions");
  g.count = std::max<std::ptrdiff_t>(1, static_cast<std::ptrdiff_t>(n));
  // The last panel may come out shorter than width, never empty.
  while (g.count > 1 && g.lo(g.count - 1) >= b) --g.count;
  return g;
}

QuadratureResult sweep_panels(const RealFn& f, const PanelGrid& g, const QuadratureSpec& spec, double min_target,
                              Execution exec) {
  std::vector<PanelResult> panels(static_cast<std::size_t>(g.count));
  // First pass: every panel at the minimum level, accepting on roundoff only.
  parallel_for(g.count, exec, [&](std::ptrdiff_t i) { panels[i] = romberg_panel(f, g.lo(i), g.len(i), 0.0, kMinLevel); });

  std::vector<double> values(panels.size());
  auto total_value = [&] {
    for (std::size_t i = 0; i < panels.size(); ++i) values[i] = panels[i].value;
    return pairwise_sum(values);
  };
  const double first = total_value();
  const double target = std::max({spec.abs_tol, spec.rel_tol * std::fabs(first), min_target});
  const double span = g.b - g.a;

  std::vector<std::ptrdiff_t> refine;
  for (std::ptrdiff_t i = 0; i < g.count; ++i) {
    const double local = target * g.len(i) / span;
    if (panels[i].error > std::max(local, panels[i].floor()))
      refine.push_back(i);
    else
      panels[i].converged = true;
  }
  parallel_for(static_cast<std::ptrdiff_t>(refine.size()), exec, [&](std::ptrdiff_t r) {
    const std::ptrdiff_t i = refine[r];
    panels[i] = romberg_panel(f, g.lo(i), g.len(i), target * g.len(i) / span, kMaxLevel);
  });

  QuadratureResult out;
  out.value = total_value();
  for (std::size_t i = 0; i < panels.size(); ++i) values[i] = panels[i].error;
  out.error = pairwise_sum(values);
  for (std::size_t i = 0; i < panels.size(); ++i) values[i] = panels[i].abs_integral;
  out.abs_integral = pairwise_sum(values);
  bool all_converged = true;
  for (const auto& p : panels) {
    out.evaluations += p.evaluations;
    all_converged = all_converged && p.converged;
  }
  const double final_target = std::max({spec.abs_tol, spec.rel_tol * std::fabs(out.value), min_target});
  if (out.error > final_target) {
    if (!all_converged) throw QuadratureError("single", out.error, "panel quadrature did not converge");
    out.roundoff_limited = true;
  }
  return out;
}

double tail_bound(const RealFn& f, double eta, double cut) {
  constexpr int kSamples = 32;
  double m = 0.0;
  for (int j = 0; j <= kSamples; ++j) {
    const double t = cut * (0.5 + 0.5 * j / kSamples);
    m = std::max(m, std::fabs(f(t)) * std::exp(eta * t) / t);
  }
  // |f| <= M t e^{-eta t}  =>  tail <= M e^{-eta T} (T/eta + 1/eta^2); doubled
  // because the samples can straddle peaks.
  return 2.0 * m * std::exp(-eta * cut) * (cut / eta + 1.0 / (eta * eta));
}

void require_positive(const char* field, double value) {
  if (!(value > 0.0) || !std::isfinite(value)) throw ValidationError(field, "must be positive and finite");
}

}  // namespace

void validate(const QuadratureSpec& spec) {
  if (!(spec.abs_tol > 0.0 && spec.abs_tol < 1.0)) throw ValidationError("abs_tol", "must lie in (0, 1)");
  if (!(spec.rel_tol > 0.0 && spec.rel_tol < 1.0)) throw ValidationError("rel_tol", "must lie in (0, 1)");
  if (spec.max_subdivisions < 1) throw ValidationError("max_subdivisions", "must be >= 1");
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kBlock = 8;
  if (values.size() <= kBlock) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double dyadic_floor(double width) {
  require_positive("panel_width", width);
  int exponent = 0;
  std::frexp(width, &exponent);
  return std::ldexp(1.0, exponent - 1);
}

QuadratureResult integrate_finite(const RealFn& f, double a, double b, double max_panel_width,
                                  const QuadratureSpec& spec, Execution exec) {
  validate(spec);
  if (!std::isfinite(a) || !std::isfinite(b)) throw ValidationError("bounds", "must be finite");
  if (b == a) return {};
  if (b < a) {
    QuadratureResult r = integrate_finite(f, b, a, max_panel_width, spec, exec);
    r.value = -r.value;
    return r;
  }
  return sweep_panels(f, make_grid(a, b, max_panel_width, spec), spec, 0.0, exec);
}

QuadratureResult integrate_piecewise(const RealFn& f, std::span<const double> cuts, double max_panel_width,
                                     const QuadratureSpec& spec) {
  validate(spec);
  if (cuts.size() < 2) return {};
  // The absolute budget is shared between the pieces.
  QuadratureSpec piece = spec;
  piece.abs_tol /= static_cast<double>(cuts.size() - 1);
  QuadratureResult total;
  std::vector<double> values;
  values.reserve(cuts.size() - 1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i + 1] >= cuts[i])) throw ValidationError("cuts", "must be ascending");
    if (cuts[i + 1] == cuts[i]) continue;
    const QuadratureResult r =
        integrate_finite(f, cuts[i], cuts[i + 1], std::min(max_panel_width, cuts[i + 1] - cuts[i]), piece,
                         Execution::Serial);
    values.push_back(r.value);
    total.error += r.error;
    total.abs_integral += r.abs_integral;
    total.evaluations += r.evaluations;
    total.roundoff_limited = total.roundoff_limited || r.roundoff_limited;
  }
  total.value = pairwise_sum(values);
  return total;
}

QuadratureResult integrate_semi_infinite_damped_estimate(const RealFn& f, double eta, double omega_scale,
                                                         const QuadratureSpec& spec, Execution exec) {
  validate(spec);
  require_positive("eta", eta);
  require_positive("omega_scale", omega_scale);
  const double width = dyadic_floor(std::min(std::numbers::pi / (4.0 * omega_scale), 1.0 / eta));

  // Whole panels only, so extensions keep every node on the same dyadic lattice.
  auto whole_panels_to = [&](double t) { return std::ceil(t / width) * width; };
  double cut = whole_panels_to(kDefaultCut / eta);
  QuadratureResult total = sweep_panels(f, make_grid(0.0, cut, width, spec), spec, 0.0, exec);

  for (;;) {
    const double tail = tail_bound(f, eta, cut);
    if (tail <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(total.value))) {
      total.error += tail;
      return total;
    }
    if (cut >= kMaxCut / eta)
      throw QuadratureError("single", tail, "tail bound beyond 100/eta still above tolerance");
    const double next = whole_panels_to(cut + kCutStep / eta);
    const QuadratureResult piece = sweep_panels(f, make_grid(cut, next, width, spec), spec,
                                                spec.rel_tol * std::fabs(total.value), exec);
    total.value += piece.value;
    total.error += piece.error;
    total.abs_integral += piece.abs_integral;
    total.evaluations += piece.evaluations;
    total.roundoff_limited = total.roundoff_limited || piece.roundoff_limited;
    cut = next;
  }
}

double integrate_semi_infinite_damped(const RealFn& f, double eta, double omega_scale, const QuadratureSpec& spec,
                                      Execution exec) {
  return integrate_semi_infinite_damped_estimate(f, eta, omega_scale, spec, exec).value;
}

}  // namespace casimir::numerics
