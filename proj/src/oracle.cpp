#include "casimir/oracle.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/parallel.hpp"

namespace casimir::oracle {

namespace {

using cplx = std::complex<double>;

constexpr double kImagResidueTol = 1e-10;

void require_tail_tol(double tail_tol) {
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) throw ValidationError("tail_tol", "must lie in (0, 1)");
}

struct ThermalTraces {
  cplx forward;   // Tr{rho x x(t)}
  cplx backward;  // Tr{rho x(t) x}
};

// Single-oscillator thermal traces with x(t)_{mn} = x_{mn} e^{i(m-n) w t}.
ThermalTraces traces(const Eigen::MatrixXd& x, const Eigen::VectorXd& w, double omega, double t) {
  const auto dim = x.rows();
  // phase[d + dim] = e^{i d omega t}, d in [-dim, dim]
  std::vector<cplx> phase(2 * dim + 1);
  for (Eigen::Index d = -dim; d <= dim; ++d) phase[d + dim] = std::polar(1.0, static_cast<double>(d) * omega * t);

  ThermalTraces out{};
  for (Eigen::Index n = 0; n < w.size(); ++n) {
    cplx fwd = 0.0;
    cplx bwd = 0.0;
    for (Eigen::Index k = 0; k < dim; ++k) {
      const double xx = x(n, k) * x(k, n);
      if (xx == 0.0) continue;
      fwd += xx * phase[(k - n) + dim];
      bwd += xx * phase[(n - k) + dim];
    }
    out.forward += w(n) * fwd;
    out.backward += w(n) * bwd;
  }
  return out;
}

}  // namespace

int choose_truncation(const ThermalState& thermal, const Oscillator& osc, double tail_tol) {
  require_tail_tol(tail_tol);
  if (thermal.zero_temperature()) return 2;
  const double x = thermal.reduced(osc.omega);
  // smallest integer n with n > -ln(tail_tol) / x
  const double bound = -std::log(tail_tol) / x;
  if (bound > static_cast<double>(std::numeric_limits<int>::max() / 2))
    throw ValidationError("thermal.beta", "truncation for this temperature is too large to build");
  int n = static_cast<int>(std::floor(bound)) + 1;
  while (n > 1 && std::exp(-x * (n - 1)) < tail_tol) --n;
  while (std::exp(-x * n) >= tail_tol) ++n;
  return n;
}

double tail_weight(const ThermalState& thermal, const Oscillator& osc, int n_max) {
  if (thermal.zero_temperature()) return 0.0;
  return std::exp(-thermal.reduced(osc.omega) * n_max);
}

Eigen::MatrixXd position_matrix(double hbar, const Oscillator& osc, int dim) {
  const double scale = std::sqrt(hbar / (2.0 * osc.mass * osc.omega));
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 0; n + 1 < dim; ++n) {
    x(n, n + 1) = scale * std::sqrt(static_cast<double>(n + 1));
    x(n + 1, n) = x(n, n + 1);
  }
  return x;
}

Eigen::VectorXd boltzmann_weights(const ThermalState& thermal, const Oscillator& osc, int n_max) {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n_max);
  if (thermal.zero_temperature()) {
    w(0) = 1.0;
    return w;
  }
  const double x = thermal.reduced(osc.omega);
  for (int n = 0; n < n_max; ++n) w(n) = std::exp(-x * n);
  return w / w.sum();
}

FockWorkspace make_workspace(const OscillatorSystem& raw, int n_max1, int n_max2) {
  const OscillatorSystem sys = validate_system(raw);
  if (n_max1 < 1) throw ValidationError("n_max1", "must be >= 1");
  if (n_max2 < 1) throw ValidationError("n_max2", "must be >= 1");
  FockWorkspace ws;
  ws.n_max1 = n_max1;
  ws.n_max2 = n_max2;
  ws.hbar = sys.thermal.hbar;
  ws.omega1 = sys.osc1.omega;
  ws.omega2 = sys.osc2.omega;
  ws.x1_elems = position_matrix(ws.hbar, sys.osc1, n_max1 + 1);
  ws.x2_elems = position_matrix(ws.hbar, sys.osc2, n_max2 + 1);
  ws.weights1 = boltzmann_weights(sys.thermal, sys.osc1, n_max1);
  ws.weights2 = boltzmann_weights(sys.thermal, sys.osc2, n_max2);
  return ws;
}

FockWorkspace make_workspace(const OscillatorSystem& sys, double tail_tol) {
  return make_workspace(sys, choose_truncation(sys.thermal, sys.osc1, tail_tol),
                        choose_truncation(sys.thermal, sys.osc2, tail_tol));
}

void require_tail(const FockWorkspace& ws, const OscillatorSystem& sys, double tail_tol) {
  require_tail_tol(tail_tol);
  if (tail_weight(sys.thermal, sys.osc1, ws.n_max1) >= tail_tol)
    throw ValidationError("n_max1", "truncation drops Boltzmann weight above tail_tol");
  if (tail_weight(sys.thermal, sys.osc2, ws.n_max2) >= tail_tol)
    throw ValidationError("n_max2", "truncation drops Boltzmann weight above tail_tol");
}

double phi_trace(const FockWorkspace& ws, double t) {
  const ThermalTraces a = traces(ws.x1_elems, ws.weights1, ws.omega1, t);
  const ThermalTraces b = traces(ws.x2_elems, ws.weights2, ws.omega2, t);
  // rho factorizes, so Tr{rho [x1 x2, x1(t) x2(t)]} splits into products.
  const cplx value = (a.forward * b.forward - a.backward * b.backward) / cplx(0.0, ws.hbar);
  const double scale = 2.0 * std::abs(a.forward) * std::abs(b.forward) / ws.hbar;
  if (std::fabs(value.imag()) > kImagResidueTol * scale + std::numeric_limits<double>::min())
    throw ConsistencyError("phi_trace: non-real thermal trace (imaginary part " + std::to_string(value.imag()) + ")");
  return value.real();
}

double phi_trace(const OscillatorSystem& sys, double t, double tail_tol) {
  const FockWorkspace ws = make_workspace(sys, tail_tol);
  require_tail(ws, sys, tail_tol);
  return phi_trace(ws, t);
}

void phi_trace_grid(const FockWorkspace& ws, std::span<const double> t, std::span<double> out, Execution exec) {
  if (t.size() != out.size()) throw std::invalid_argument("phi_trace_grid: size mismatch");
  parallel_for(static_cast<std::ptrdiff_t>(t.size()), exec, [&](std::ptrdiff_t i) { out[i] = phi_trace(ws, t[i]); });
}

double occupation(const ThermalState& thermal, const Oscillator& osc, double tail_tol) {
  const int n_max = choose_truncation(thermal, osc, tail_tol);
  const Eigen::VectorXd w = boltzmann_weights(thermal, osc, n_max);
  double mean = 0.0;
  for (int n = 0; n < n_max; ++n) mean += n * w(n);
  return mean;
}

}  // namespace casimir::oracle
