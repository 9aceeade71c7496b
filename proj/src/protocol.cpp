#include "casimir/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Fritsch-Carlson slopes with the shape-preserving three-point end rule.
std::vector<double> monotone_slopes(const std::vector<double>& t, const std::vector<double>& q) {
  const std::size_t n = t.size();
  std::vector<double> h(n - 1), delta(n - 1), d(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = t[k + 1] - t[k];
    delta[k] = (q[k + 1] - q[k]) / h[k];
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (delta[k - 1] * delta[k] <= 0.0) continue;
    const double w1 = 2.0 * h[k] + h[k - 1];
    const double w2 = h[k] + 2.0 * h[k - 1];
    d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
  }
  auto edge = [](double h0, double h1, double m0, double m1) {
    double s = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
    if (s * m0 <= 0.0) return 0.0;
    if (m0 * m1 <= 0.0 && std::fabs(s) > std::fabs(3.0 * m0)) s = 3.0 * m0;
    return s;
  };
  d[0] = edge(h[0], h[1], delta[0], delta[1]);
  d[n - 1] = edge(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return d;
}

// Second-order centered differences on a nonuniform grid, one-sided at the ends.
std::vector<double> centered_derivative(const std::vector<double>& t, const std::vector<double>& q) {
  const std::size_t n = t.size();
  std::vector<double> d(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hm = t[i] - t[i - 1];
    const double hp = t[i + 1] - t[i];
    d[i] = -hp / (hm * (hm + hp)) * q[i - 1] + (hp - hm) / (hm * hp) * q[i] + hm / (hp * (hm + hp)) * q[i + 1];
  }
  {
    const double h0 = t[1] - t[0];
    const double h1 = t[2] - t[1];
    d[0] = -(2.0 * h0 + h1) / (h0 * (h0 + h1)) * q[0] + (h0 + h1) / (h0 * h1) * q[1] - h0 / (h1 * (h0 + h1)) * q[2];
  }
  {
    const double h0 = t[n - 1] - t[n - 2];
    const double h1 = t[n - 2] - t[n - 3];
    d[n - 1] = (2.0 * h0 + h1) / (h0 * (h0 + h1)) * q[n - 1] - (h0 + h1) / (h0 * h1) * q[n - 2] +
               h0 / (h1 * (h0 + h1)) * q[n - 3];
  }
  return d;
}

// Index k with t[k] <= x < t[k+1], for x inside the table.
std::size_t bracket(const std::vector<double>& t, double x) {
  const auto it = std::upper_bound(t.begin(), t.end(), x);
  const auto k = static_cast<std::size_t>(std::distance(t.begin(), it));
  return std::min(k == 0 ? 0 : k - 1, t.size() - 2);
}

}  // namespace

PerturbationProtocol linear_ramp(double window) {
  if (!(window > 0.0) || !std::isfinite(window)) throw ValidationError("window", "must be positive and finite");
  return PerturbationProtocol(PerturbationProtocol::Linear{window});
}

PerturbationProtocol damped_ramp(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw ValidationError("eta", "must be positive and finite");
  return PerturbationProtocol(PerturbationProtocol::Damped{eta});
}

PerturbationProtocol tabulated_protocol(std::vector<double> t, std::vector<double> q) {
  if (t.size() != q.size()) throw ValidationError("tabulated.q", "needs one value per knot");
  if (t.size() < 3) throw ValidationError("tabulated.t", "needs at least 3 knots");
  if (!(t.front() >= 0.0)) throw ValidationError("tabulated.t", "first knot must be >= 0 (causality)");
  for (std::size_t i = 0; i + 1 < t.size(); ++i)
    if (!(t[i + 1] > t[i])) throw ValidationError("tabulated.t", "knots must be strictly ascending");
  for (double v : q)
    if (!std::isfinite(v)) throw ValidationError("tabulated.q", "values must be finite");
  PerturbationProtocol::Table table;
  table.slope = monotone_slopes(t, q);
  table.qdot = centered_derivative(t, q);
  table.t = std::move(t);
  table.q = std::move(q);
  return PerturbationProtocol(std::move(table));
}

PerturbationProtocol::Kind PerturbationProtocol::kind() const {
  return std::visit(overloaded{[](const Linear&) { return Kind::LinearRamp; },
                               [](const Damped&) { return Kind::DampedRamp; },
                               [](const Table&) { return Kind::Tabulated; }},
                    shape_);
}

double PerturbationProtocol::q(double time) const {
  const double t = time - start_;
  if (t < 0.0) return 0.0;
  return std::visit(overloaded{[t](const Linear& s) { return t <= s.window ? t : 0.0; },
                               [t](const Damped& s) { return t * std::exp(-s.eta * t); },
                               [t](const Table& s) {
                                 if (t < s.t.front() || t > s.t.back()) return 0.0;
                                 const std::size_t k = bracket(s.t, t);
                                 const double h = s.t[k + 1] - s.t[k];
                                 const double x = (t - s.t[k]) / h;
                                 const double x2 = x * x;
                                 const double x3 = x2 * x;
                                 return (2 * x3 - 3 * x2 + 1) * s.q[k] + (x3 - 2 * x2 + x) * h * s.slope[k] +
                                        (-2 * x3 + 3 * x2) * s.q[k + 1] + (x3 - x2) * h * s.slope[k + 1];
                               }},
                    shape_);
}

double PerturbationProtocol::qdot(double time) const {
  const double t = time - start_;
  if (t < 0.0) return 0.0;
  return std::visit(overloaded{[t](const Linear& s) { return t <= s.window ? 1.0 : 0.0; },
                               [t](const Damped& s) { return (1.0 - s.eta * t) * std::exp(-s.eta * t); },
                               [t](const Table& s) {
                                 if (t < s.t.front() || t > s.t.back()) return 0.0;
                                 const std::size_t k = bracket(s.t, t);
                                 const double x = (t - s.t[k]) / (s.t[k + 1] - s.t[k]);
                                 return (1.0 - x) * s.qdot[k] + x * s.qdot[k + 1];
                               }},
                    shape_);
}

double PerturbationProtocol::support_start() const {
  if (const auto* table = std::get_if<Table>(&shape_)) return start_ + table->t.front();
  return start_;
}

double PerturbationProtocol::support_end() const {
  return start_ + std::visit(overloaded{[](const Linear& s) { return s.window; },
                                        [](const Damped&) { return std::numeric_limits<double>::infinity(); },
                                        [](const Table& s) { return s.t.back(); }},
                             shape_);
}

std::vector<double> PerturbationProtocol::breakpoints() const {
  std::vector<double> out = std::visit(overloaded{[](const Linear& s) { return std::vector<double>{0.0, s.window}; },
                                                  [](const Damped&) { return std::vector<double>{0.0}; },
                                                  [](const Table& s) { return s.t; }},
                                       shape_);
  for (double& t : out) t += start_;
  return out;
}

double PerturbationProtocol::time_scale() const {
  return std::visit(overloaded{[](const Linear& s) { return s.window / 8.0; },
                               [](const Damped& s) { return 1.0 / s.eta; },
                               [](const Table& s) {
                                 double h = s.t.back() - s.t.front();
                                 for (std::size_t i = 0; i + 1 < s.t.size(); ++i) h = std::min(h, s.t[i + 1] - s.t[i]);
                                 return h;
                               }},
                    shape_);
}

bool PerturbationProtocol::terminates() const {
  return std::visit(overloaded{[](const Linear&) { return false; }, [](const Damped&) { return true; },
                               [](const Table& s) { return s.q.front() == 0.0 && s.q.back() == 0.0; }},
                    shape_);
}

PerturbationProtocol PerturbationProtocol::shifted(double t0) const {
  if (!(t0 >= 0.0) || !std::isfinite(t0)) throw ValidationError("shift", "must be finite and >= 0");
  PerturbationProtocol out = *this;
  out.start_ += t0;
  return out;
}

}  // namespace casimir
