#include <catch_amalgamated.hpp>

#include <cmath>
#include <functional>
#include <limits>

#include "casimir/errors.hpp"
#include "casimir/model.hpp"
#include "support.hpp"

using namespace casimir;
using support::Gen;
using support::rel_err;

namespace {

std::string failing_field(const OscillatorSystem& s) {
  try {
    validate_system(s);
  } catch (const ValidationError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_CASE("canonical system validates unchanged") {
  const auto s = canonical_system();
  CHECK(s.osc1.mass == 1.0);
  CHECK(s.osc2.omega == 1.1);
  CHECK(s.thermal.beta == 2.0);
  CHECK(s.motion.eta == 0.01);
  CHECK(s.motion.velocity == Vec3{0, 0, 0.1});
  CHECK(validate_system(s) == s);
}

TEST_CASE("validation names the offending field") {
  using Mutation = std::function<void(OscillatorSystem&)>;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const std::vector<std::pair<Mutation, std::string>> cases = {
      {[](auto& s) { s.osc1.mass = 0.0; }, "osc1.mass"},
      {[](auto& s) { s.osc1.omega = -1.0; }, "osc1.omega"},
      {[](auto& s) { s.osc2.mass = -2.0; }, "osc2.mass"},
      {[&](auto& s) { s.osc2.omega = nan; }, "osc2.omega"},
      {[](auto& s) { s.thermal.beta = 0.0; }, "thermal.beta"},
      {[](auto& s) { s.thermal.beta = -kZeroTemperature; }, "thermal.beta"},
      {[](auto& s) { s.thermal.hbar = 0.0; }, "thermal.hbar"},
      {[](auto& s) { s.coupling.psi0 = kZeroTemperature; }, "coupling.psi0"},
      {[&](auto& s) { s.coupling.grad_psi.y = nan; }, "coupling.grad_psi.y"},
      {[](auto& s) { s.motion.velocity.x = kZeroTemperature; }, "motion.velocity.x"},
      {[](auto& s) { s.motion.eta = -0.1; }, "motion.eta"},
      {[](auto& s) { s.motion.eta = 0.0; }, "motion.eta"},
  };
  for (const auto& [mutate, field] : cases) {
    auto s = canonical_system();
    mutate(s);
    CHECK(failing_field(s) == field);
  }
}

TEST_CASE("zero temperature sentinel is a valid beta") {
  auto s = canonical_system();
  s.thermal.beta = kZeroTemperature;
  CHECK(s.thermal.zero_temperature());
  CHECK_NOTHROW(validate_system(s));
}

TEST_CASE("validation is idempotent on random systems") {
  Gen gen(11);
  for (int i = 0; i < 200; ++i) {
    const auto s = gen.system();
    const auto once = validate_system(s);
    CHECK(validate_system(once) == once);
    CHECK(once == s);
  }
}

TEST_CASE("default tolerances") {
  CHECK(kDefaultTolerances.abs == 1e-12);
  CHECK(kDefaultTolerances.rel == 1e-9);
}

TEST_CASE("scale_units identity and time rescale") {
  const auto s = canonical_system();
  CHECK(scale_units(s, 1, 1, 1) == s);

  const auto t2 = scale_units(s, 1, 2, 1);
  CHECK(t2.osc1.omega == 0.5);
  CHECK(t2.motion.eta == 0.005);
  CHECK(t2.thermal.hbar == 0.5);
  CHECK(t2.thermal.beta == 8.0);
  CHECK(t2.motion.velocity == Vec3{0, 0, 0.05});
  CHECK(t2.osc1.mass == 1.0);
}

TEST_CASE("scale_units rejects nonpositive factors") {
  const auto s = canonical_system();
  CHECK_THROWS_AS(scale_units(s, 0, 1, 1), ValidationError);
  CHECK_THROWS_AS(scale_units(s, 1, -1, 1), ValidationError);
  CHECK_THROWS_AS(scale_units(s, 1, 1, 0), ValidationError);
}

TEST_CASE("scale_units preserves dimensionless combinations") {
  Gen gen(12);
  for (int i = 0; i < 300; ++i) {
    const auto s = gen.system();
    const double L = gen.log_uniform(1e-3, 1e3), T = gen.log_uniform(1e-3, 1e3), M = gen.log_uniform(1e-3, 1e3);
    const auto r = scale_units(s, L, T, M);
    auto x1 = [](const OscillatorSystem& v) { return v.thermal.reduced(v.osc1.omega); };
    auto x2 = [](const OscillatorSystem& v) { return v.thermal.reduced(v.osc2.omega); };
    CHECK(rel_err(x1(r), x1(s)) < 1e-14);
    CHECK(rel_err(x2(r), x2(s)) < 1e-14);
    CHECK(rel_err(r.motion.eta / r.osc1.omega, s.motion.eta / s.osc1.omega) < 1e-14);
    CHECK(rel_err((r.osc1.omega - r.osc2.omega) / r.osc1.omega, (s.osc1.omega - s.osc2.omega) / s.osc1.omega) <
          1e-13);
    // psi x1 x2 stays an energy: psi0 hbar / (m w) scales as energy.
    const double e_s = s.coupling.psi0 * s.thermal.hbar / (s.osc1.mass * s.osc1.omega) * s.thermal.beta;
    const double e_r = r.coupling.psi0 * r.thermal.hbar / (r.osc1.mass * r.osc1.omega) * r.thermal.beta;
    CHECK(rel_err(e_r, e_s) < 1e-13);
  }
}

TEST_CASE("scale_units composes") {
  Gen gen(13);
  for (int i = 0; i < 200; ++i) {
    const auto s = gen.system();
    const double a = gen.log_uniform(0.1, 10), b = gen.log_uniform(0.1, 10), c = gen.log_uniform(0.1, 10);
    const double a2 = gen.log_uniform(0.1, 10), b2 = gen.log_uniform(0.1, 10), c2 = gen.log_uniform(0.1, 10);
    const auto twice = scale_units(scale_units(s, a, b, c), a2, b2, c2);
    const auto once = scale_units(s, a * a2, b * b2, c * c2);
    CHECK(rel_err(twice.osc1.mass, once.osc1.mass) < 1e-14);
    CHECK(rel_err(twice.osc2.omega, once.osc2.omega) < 1e-14);
    CHECK(rel_err(twice.thermal.hbar, once.thermal.hbar) < 1e-14);
    CHECK(rel_err(twice.thermal.beta, once.thermal.beta) < 1e-14);
    CHECK(rel_err(twice.coupling.psi0, once.coupling.psi0) < 1e-14);
    CHECK(rel_err(twice.coupling.grad_psi, once.coupling.grad_psi) < 1e-14);
    CHECK(rel_err(twice.motion.velocity, once.motion.velocity) < 1e-14);
    CHECK(rel_err(twice.motion.eta, once.motion.eta) < 1e-14);
  }
}
