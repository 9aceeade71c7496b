#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace casimir {

// A violated invariant on user-supplied parameters. field() names the
// offending member using dotted paths, e.g. "osc1.mass" or "motion.eta".
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Quadrature did not reach its tolerance. level() is "outer", "inner" or
// "single" for non-nested integrals.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(std::string level, double achieved, const std::string& what)
      : std::runtime_error(what + " [" + level + ", achieved error " + format(achieved) + "]"),
        level_(std::move(level)),
        achieved_(achieved) {}

  const std::string& level() const noexcept { return level_; }
  double achieved_error() const noexcept { return achieved_; }

 private:
  static std::string format(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
  }

  std::string level_;
  double achieved_;
};

// Two routes that must agree did not, or a result that must be real was not.
// Either one signals an implementation bug rather than bad input.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace casimir
