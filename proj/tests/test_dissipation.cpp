#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "casimir/dissipation.hpp"
#include "casimir/errors.hpp"
#include "casimir/forces.hpp"
#include "casimir/protocol.hpp"
#include "casimir/response.hpp"
#include "support.hpp"

using namespace casimir;
using support::Gen;
using support::rel_err;

namespace {

PerturbationProtocol sine_bump(double width, int knots) {
  std::vector<double> t(knots), q(knots);
  for (int i = 0; i < knots; ++i) {
    t[i] = width * i / (knots - 1);
    const double s = std::sin(std::numbers::pi * i / (knots - 1));
    q[i] = s * s;
  }
  q.back() = 0.0;  // sin(pi) is not exactly zero
  return tabulated_protocol(t, q);
}

}  // namespace

TEST_CASE("damped ramp") {
  const auto p = damped_ramp(0.25);
  CHECK(p.kind() == PerturbationProtocol::Kind::DampedRamp);
  CHECK(p.q(0.0) == 0.0);
  CHECK(p.qdot(0.0) == 1.0);
  CHECK(p.q(-1.0) == 0.0);
  CHECK(p.qdot(-1.0) == 0.0);
  CHECK(p.q(4.0) == 4.0 * std::exp(-1.0));
  CHECK(p.qdot(4.0) == 0.0);
  CHECK(p.terminates());
  CHECK(std::isinf(p.support_end()));
  CHECK(p.time_scale() == 4.0);
  const auto later = p.shifted(2.0);
  CHECK(later.start() == 2.0);
  CHECK(later.q(6.0) == p.q(4.0));
  CHECK(later.q(1.0) == 0.0);
  CHECK_THROWS_AS(damped_ramp(0.0), ValidationError);
  CHECK_THROWS_AS(p.shifted(-1.0), ValidationError);
}

TEST_CASE("damped ramp derivative is consistent") {
  Gen gen(71);
  const auto p = damped_ramp(0.3);
  for (int i = 0; i < 200; ++i) {
    const double t = gen.uniform(0.01, 40.0), h = 1e-5;
    CHECK(std::fabs((p.q(t + h) - p.q(t - h)) / (2 * h) - p.qdot(t)) < 1e-9);
  }
}

TEST_CASE("tabulated protocol") {
  const auto p = sine_bump(10.0, 41);
  CHECK(p.kind() == PerturbationProtocol::Kind::Tabulated);
  CHECK(p.terminates());
  CHECK(p.q(5.0) == 1.0);
  CHECK(p.q(-1.0) == 0.0);
  CHECK(p.q(11.0) == 0.0);
  CHECK(p.support_end() == 10.0);
  CHECK(std::fabs(p.q(2.6) - std::pow(std::sin(std::numbers::pi * 0.26), 2)) < 1e-3);
  CHECK(p.breakpoints().size() == 41);
  CHECK_THROWS_AS(tabulated_protocol({0.0, 1.0}, {0.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(tabulated_protocol({0.0, 2.0, 1.0}, {0.0, 0.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(tabulated_protocol({-1.0, 0.0, 1.0}, {0.0, 0.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(tabulated_protocol({0.0, 1.0, 2.0}, {0.0, 1.0}), ValidationError);
  CHECK(!tabulated_protocol({0.0, 1.0, 2.0}, {0.0, 1.0, 1.0}).terminates());
}

TEST_CASE("reversible work vanishes for protocols that return to rest") {
  for (double eta : {0.5, 0.01}) CHECK(std::fabs(reversible_null_check(damped_ramp(eta))) <= 1e-12);
  // a ramp that never comes back does work T^2 / 2
  CHECK(rel_err(reversible_null_check(linear_ramp(3.0)), 4.5) < 1e-14);
  CHECK(!linear_ramp(3.0).terminates());
  // tabulated qdot is interpolated independently of q, so only O(h^2)
  CHECK(std::fabs(reversible_null_check(sine_bump(10.0, 101))) < 1e-4);
}

TEST_CASE("velocity square integral") {
  for (double eta : {0.5, 0.05, 0.01}) CHECK(rel_err(velocity_square_integral(damped_ramp(eta)).value, 0.25 / eta) < 1e-12);
  CHECK(rel_err(velocity_square_integral(linear_ramp(2.0)).value, 2.0) < 1e-14);
}

TEST_CASE("motion kernel is the scaled response kernel") {
  const auto s = canonical_system();
  const auto k = phi_AA_from_motion(s);
  const auto r = response_kernel(s);
  const double vg = std::pow(dot(s.motion.velocity, s.coupling.grad_psi), 2);
  CHECK(k.omega_scale == s.osc1.omega + s.osc2.omega);
  for (double t : {0.0, 0.5, 3.0, 17.0}) CHECK(k.eval(t) == vg * eval_phi(r, t));
}

TEST_CASE("closed-form dissipation") {
  const auto s = canonical_system();
  const auto d = dissipation_closed_form(s);
  CHECK(d.route == DissipationRoute::ClosedForm);
  CHECK(d.energy < 0.0);
  CHECK(rel_err(d.energy, 25.0 * dot(s.motion.velocity, friction_force_closed_form(s).friction)) < 1e-15);
  CHECK(d.error_estimate <= 1e-10 * std::fabs(d.energy));

  auto rest = s;
  rest.motion.velocity = {0, 0, 0};
  CHECK(dissipation_closed_form(rest).energy == 0.0);

  Gen gen(72);
  for (int i = 0; i < 100; ++i) {
    const auto r = gen.system();
    auto doubled = r;
    doubled.motion.velocity = 2.0 * r.motion.velocity;
    CHECK(rel_err(dissipation_closed_form(doubled).energy, 4.0 * dissipation_closed_form(r).energy) < 1e-14);
    auto swapped = r;
    swapped.motion.velocity = -1.0 * r.motion.velocity;
    CHECK(dissipation_closed_form(swapped).energy == dissipation_closed_form(r).energy);
  }
}

TEST_CASE("general route on the damped ramp") {
  const auto s = canonical_system();
  const double eta = s.motion.eta;
  const auto closed = dissipation_closed_form(s);
  const auto general = dissipation_general(damped_ramp(eta), phi_AA_from_motion(s), eta);
  CHECK(general.route == DissipationRoute::General);
  CHECK(general.terminating);
  CHECK(rel_err(general.energy, closed.energy) < 1e-8);
  CHECK(std::fabs(general.energy - closed.energy) <= eta / s.osc1.omega * std::fabs(closed.energy));

  auto rest = s;
  rest.motion.velocity = {0, 0, 0};
  CHECK(dissipation_general(damped_ramp(eta), phi_AA_from_motion(rest), eta).energy == 0.0);
  CHECK(dissipation_general(damped_ramp(eta), {[](double) { return 0.0; }, 1.0}, eta).energy == 0.0);
  CHECK_THROWS_AS(dissipation_general(damped_ramp(eta), phi_AA_from_motion(s), 0.0), ValidationError);
}

TEST_CASE("general route is invariant under delay") {
  const auto s = canonical_system();
  const double eta = 0.05;
  auto sys = s;
  sys.motion.eta = eta;
  const auto kernel = phi_AA_from_motion(sys);
  const double base = dissipation_general(damped_ramp(eta), kernel, eta).energy;
  CHECK(rel_err(dissipation_general(damped_ramp(eta).shifted(3.5), kernel, eta).energy, base) < 1e-10);
}

TEST_CASE("general route on random systems") {
  Gen gen(73);
  for (int i = 0; i < 5; ++i) {
    auto s = gen.system();
    s.motion.eta = gen.log_uniform(0.03, 0.1) * s.osc1.omega;
    const auto closed = dissipation_closed_form(s);
    const auto general = dissipation_general(damped_ramp(s.motion.eta), phi_AA_from_motion(s), s.motion.eta);
    CHECK(rel_err(general.energy, closed.energy) < 1e-8);
  }
}

TEST_CASE("leading-order route") {
  const auto s = canonical_system();
  const double eta = s.motion.eta;
  const auto lead = dissipation_leading_order(damped_ramp(eta), phi_AA_from_motion(s), eta);
  CHECK(lead.route == DissipationRoute::LeadingOrder);
  CHECK(rel_err(lead.energy, dissipation_closed_form(s).energy) < 1e-8);

  // windowed ramp: a number, but not a finished dissipation
  const auto windowed = dissipation_leading_order(linear_ramp(10.0), phi_AA_from_motion(s), eta);
  CHECK(!windowed.terminating);
  CHECK(std::isfinite(windowed.energy));
}

TEST_CASE("oracle kernel reproduces the dissipation") {
  auto s = canonical_system();
  s.motion.eta = 0.05;
  const double eta = s.motion.eta;
  const double dt = std::min(0.05, 0.25 / (s.osc1.omega + s.osc2.omega));
  const auto kernel = phi_AA_from_oracle(s, 40.0 / eta + 10.0 * dt, dt, 1e-12);
  const auto closed = dissipation_closed_form(s);
  const auto general = dissipation_general(damped_ramp(eta), kernel, eta);
  CHECK(rel_err(general.energy, closed.energy) < 1e-6);
  CHECK_THROWS_AS(phi_AA_from_oracle(s, 0.0, dt, 1e-12), ValidationError);
  CHECK_THROWS_AS(phi_AA_from_oracle(s, 1.0, -dt, 1e-12), ValidationError);
}

TEST_CASE("zero temperature dissipation is first order in the damping") {
  auto s = canonical_system();
  s.thermal.beta = kZeroTemperature;
  for (double eta : {1e-2, 1e-3}) {
    s.motion.eta = eta;
    // the work 25 v.F at eta carries 1 / (4 eta); F itself is O(eta)
    const double a = dissipation_closed_form(s).energy * 4.0 * eta;
    s.motion.eta = eta / 2.0;
    const double b = dissipation_closed_form(s).energy * 4.0 * eta / 2.0;
    CHECK(std::fabs(a / b - 2.0) < 0.01);
  }
}
