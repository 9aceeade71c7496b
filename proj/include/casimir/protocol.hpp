#pragma once

#include <limits>
#include <variant>
#include <vector>

namespace casimir {

// The classical time dependence q(t) of a perturbation -A q(t). Every
// protocol is causal: q and qdot vanish before start().
class PerturbationProtocol {
 public:
  enum class Kind { LinearRamp, DampedRamp, Tabulated };

  Kind kind() const;

  double q(double t) const;
  double qdot(double t) const;

  // Time origin of the protocol; 0 unless shifted.
  double start() const { return start_; }
  // First time q can be nonzero (start() plus the first knot for tables).
  double support_start() const;
  // End of compact support, +inf for the damped ramp.
  double support_end() const;
  // Times where q or qdot is not smooth, ascending: the knots of a table,
  // the window ends of a ramp, the start of a damped ramp.
  std::vector<double> breakpoints() const;
  // Characteristic time over which q changes, for panel sizing.
  double time_scale() const;
  // True if q returns to rest, so the total work is a finished quantity.
  // LinearRamp is accepted for testing but never terminates.
  bool terminates() const;

  // Same protocol delayed by t0 >= 0.
  PerturbationProtocol shifted(double t0) const;

  friend PerturbationProtocol linear_ramp(double window);
  friend PerturbationProtocol damped_ramp(double eta);
  friend PerturbationProtocol tabulated_protocol(std::vector<double> t, std::vector<double> q);

 private:
  struct Linear {
    double window;
  };
  struct Damped {
    double eta;
  };
  struct Table {
    std::vector<double> t;
    std::vector<double> q;
    std::vector<double> slope;  // monotone cubic (Fritsch-Carlson) slopes for q
    std::vector<double> qdot;   // centered differences, one-sided at the ends
  };

  explicit PerturbationProtocol(std::variant<Linear, Damped, Table> shape) : shape_(std::move(shape)) {}

  std::variant<Linear, Damped, Table> shape_;
  double start_ = 0.0;
};

// q(t) = t on [0, window], zero elsewhere.
PerturbationProtocol linear_ramp(double window);

// q(t) = t e^{-eta t}, qdot(t) = (1 - eta t) e^{-eta t} for t >= 0.
PerturbationProtocol damped_ramp(double eta);

// Knots t (strictly ascending, t[0] >= 0, at least 3) and values q. q is a
// monotone cubic interpolant; qdot interpolates centered-difference slopes
// linearly. Both vanish outside [t.front(), t.back()].
PerturbationProtocol tabulated_protocol(std::vector<double> t, std::vector<double> q);

}  // namespace casimir
