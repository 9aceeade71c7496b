#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/numerics.hpp"
#include "casimir/parallel.hpp"

namespace casimir::numerics {

namespace {

constexpr double kCut = 40.0;
constexpr int kChebNodes = 32;
constexpr std::ptrdiff_t kMaxProxyPanels = 4096;

QuadratureSpec tightened(const QuadratureSpec& spec) {
  QuadratureSpec inner = spec;
  inner.abs_tol /= 10.0;
  inner.rel_tol /= 10.0;
  return inner;
}

struct Support {
  double begin;
  double end;
};

Support support_of(const PerturbationProtocol& q, double eta) {
  if (!(eta > 0.0)) throw ValidationError("eta", "must be positive");
  const double begin = q.support_start();
  return {begin, std::min(q.support_end(), q.start() + kCut / eta)};
}

// Piecewise Chebyshev interpolant of a smooth function on [0, length].
class ChebyshevProxy {
 public:
  ChebyshevProxy(double length, double panel_width) : length_(length) {
    panels_ = std::max<std::ptrdiff_t>(1, static_cast<std::ptrdiff_t>(std::ceil(length / panel_width)));
    panels_ = std::min(panels_, kMaxProxyPanels);
    width_ = length / static_cast<double>(panels_);
    coeffs_.assign(static_cast<std::size_t>(panels_ * kChebNodes), 0.0);
  }

  std::ptrdiff_t node_count() const { return panels_ * kChebNodes; }

  double node(std::ptrdiff_t idx) const {
    const std::ptrdiff_t p = idx / kChebNodes;
    const std::ptrdiff_t j = idx % kChebNodes;
    const double x = std::cos(std::numbers::pi * (static_cast<double>(j) + 0.5) / kChebNodes);
    return width_ * (static_cast<double>(p) + 0.5 * (x + 1.0));
  }

  // values[idx] at node(idx) -> Chebyshev coefficients; returns the largest
  // magnitude of the two highest coefficients over all panels.
  double fit(const std::vector<double>& values) {
    double tail = 0.0;
    for (std::ptrdiff_t p = 0; p < panels_; ++p) {
      const double* v = values.data() + p * kChebNodes;
      double* c = coeffs_.data() + p * kChebNodes;
      for (int k = 0; k < kChebNodes; ++k) {
        double s = 0.0;
        for (int j = 0; j < kChebNodes; ++j)
          s += v[j] * std::cos(std::numbers::pi * k * (j + 0.5) / kChebNodes);
        c[k] = 2.0 * s / kChebNodes;
      }
      c[0] *= 0.5;
      tail = std::max(tail, std::fabs(c[kChebNodes - 1]) + std::fabs(c[kChebNodes - 2]));
    }
    return tail;
  }

  double operator()(double u) const {
    if (u < 0.0 || u > length_) return 0.0;
    const auto p = std::min(panels_ - 1, static_cast<std::ptrdiff_t>(u / width_));
    const double x = 2.0 * (u - width_ * static_cast<double>(p)) / width_ - 1.0;
    const double* c = coeffs_.data() + p * kChebNodes;
    // Clenshaw
    double b1 = 0.0;
    double b2 = 0.0;
    for (int k = kChebNodes - 1; k >= 1; --k) {
      const double b0 = 2.0 * x * b1 - b2 + c[k];
      b2 = b1;
      b1 = b0;
    }
    return x * b1 - b2 + c[0];
  }

 private:
  double length_;
  double width_ = 0.0;
  std::ptrdiff_t panels_ = 1;
  std::vector<double> coeffs_;
};

double phi_panel_width(double omega_scale) {
  if (!(omega_scale > 0.0)) throw ValidationError("omega_scale", "must be positive");
  return std::numbers::pi / (4.0 * omega_scale);
}

// Integral of f over [a, b] split at sign * breaks + offset.
QuadratureResult integrate_between_breaks(const RealFn& f, double a, double b, double max_width,
                                          const std::vector<double>& breaks, double offset, double sign,
                                          const QuadratureSpec& spec) {
  std::vector<double> cuts{a, b};
  for (double t : breaks) {
    const double c = sign * t + offset;
    if (c > a && c < b) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  return integrate_piecewise(f, cuts, max_width, spec);
}

// Merges two ascending break lists where the second is shifted by -u.
std::vector<double> lagged_breaks(const std::vector<double>& breaks, double u) {
  std::vector<double> out(breaks);
  for (double t : breaks) out.push_back(t - u);
  return out;
}

}  // namespace

QuadratureResult nested_response_integral(const PerturbationProtocol& q, const RealFn& phi, double eta,
                                          double omega_scale, const QuadratureSpec& spec, Execution exec) {
  validate(spec);
  const double outer_width = phi_panel_width(omega_scale);
  const Support sup = support_of(q, eta);
  const double max_lag = sup.end - sup.begin;
  if (!(max_lag > 0.0)) return {};

  const QuadratureSpec inner = tightened(spec);
  const double scale = q.time_scale();
  const std::vector<double> breaks = q.breakpoints();

  ChebyshevProxy autocorrelation(max_lag, scale);
  std::vector<double> node_values(static_cast<std::size_t>(autocorrelation.node_count()));
  std::vector<double> node_errors(node_values.size());
  parallel_for(autocorrelation.node_count(), exec, [&](std::ptrdiff_t idx) {
    const double u = autocorrelation.node(idx);
    auto integrand = [&](double s) { return q.qdot(s + u) * q.q(s); };
    QuadratureResult r;
    try {
      r = integrate_between_breaks(integrand, sup.begin, sup.end - u, scale, lagged_breaks(breaks, u), 0.0, 1.0,
                                   inner);
    } catch (const QuadratureError& e) {
      throw QuadratureError("inner", e.achieved_error(), "protocol autocorrelation did not converge");
    }
    node_values[idx] = r.value;
    node_errors[idx] = r.error;
  });
  const double proxy_error =
      autocorrelation.fit(node_values) + *std::max_element(node_errors.begin(), node_errors.end());

  auto outer_integrand = [&](double u) { return phi(u) * autocorrelation(u); };
  QuadratureResult out;
  try {
    out = integrate_finite(outer_integrand, 0.0, max_lag, outer_width, spec, exec);
  } catch (const QuadratureError& e) {
    throw QuadratureError("outer", e.achieved_error(), "lag integral did not converge");
  }
  // Proxy error enters as max|R - R_proxy| * int|phi| <= max|R - R_proxy| * U max|phi|.
  constexpr int kProbe = 4096;
  double max_phi = 0.0;
  for (int j = 0; j <= kProbe; ++j) max_phi = std::max(max_phi, std::fabs(phi(max_lag * j / kProbe)));
  const double abs_phi = max_lag * max_phi;
  out.error += proxy_error * abs_phi;
  return out;
}

QuadratureResult nested_response_integral_direct(const PerturbationProtocol& q, const RealFn& phi, double eta,
                                                 double omega_scale, const QuadratureSpec& spec) {
  validate(spec);
  const double width = phi_panel_width(omega_scale);
  const Support sup = support_of(q, eta);
  if (!(sup.end > sup.begin)) return {};
  const QuadratureSpec inner = tightened(spec);
  const std::vector<double> breaks = q.breakpoints();

  auto response = [&](double t) {
    auto integrand = [&](double u) { return phi(u) * q.q(t - u); };
    try {
      return integrate_between_breaks(integrand, 0.0, t - sup.begin, width, breaks, t, -1.0, inner).value;
    } catch (const QuadratureError& e) {
      throw QuadratureError("inner", e.achieved_error(), "convolution did not converge");
    }
  };
  auto outer_integrand = [&](double t) { return q.qdot(t) * response(t); };
  try {
    return integrate_between_breaks(outer_integrand, sup.begin, sup.end, std::min(width, q.time_scale()), breaks,
                                    0.0, 1.0, spec);
  } catch (const QuadratureError& e) {
    if (e.level() == "inner") throw;
    throw QuadratureError("outer", e.achieved_error(), "time integral did not converge");
  }
}

SampledFunction::SampledFunction(double t0, double dt, std::vector<double> values)
    : t0_(t0), dt_(dt), values_(std::move(values)) {
  if (!(dt > 0.0)) throw ValidationError("dt", "must be positive");
  if (values_.size() < 8) throw ValidationError("values", "need at least 8 samples");
}

double SampledFunction::operator()(double t) const {
  if (t < t0_ || t > t_end()) return 0.0;
  constexpr int kPoints = 8;
  const double s = (t - t0_) / dt_;
  const auto n = static_cast<std::ptrdiff_t>(values_.size());
  auto first = static_cast<std::ptrdiff_t>(std::floor(s)) - kPoints / 2 + 1;
  first = std::clamp<std::ptrdiff_t>(first, 0, n - kPoints);
  const double x = s - static_cast<double>(first);
  // Exact hit on a node.
  const double nearest = std::round(x);
  if (x == nearest && nearest >= 0 && nearest < kPoints) return values_[first + static_cast<std::ptrdiff_t>(nearest)];
  // Barycentric weights for equispaced nodes: (-1)^j C(7, j).
  static constexpr double kWeights[kPoints] = {1, -7, 21, -35, 35, -21, 7, -1};
  double num = 0.0;
  double den = 0.0;
  for (int j = 0; j < kPoints; ++j) {
    const double w = kWeights[j] / (x - j);
    num += w * values_[first + j];
    den += w;
  }
  return num / den;
}

}  // namespace casimir::numerics
