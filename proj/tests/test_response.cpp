#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/oracle.hpp"
#include "casimir/response.hpp"
#include "support.hpp"

using namespace casimir;
using support::Gen;
using support::hp;
using support::rel_err;

TEST_CASE("coth factor limits") {
  ThermalState cold{kZeroTemperature, 1.0};
  CHECK(coth_factor(cold, 0.3) == 1.0);
  CHECK(coth_factor(cold, 30.0) == 1.0);

  ThermalState hot{1.0, 1.0};
  const double e2 = std::exp(2.0);
  CHECK(rel_err(coth_factor(hot, 2.0), static_cast<double>((exp(hp(2)) + 1) / (exp(hp(2)) - 1))) < 1e-15);
  CHECK(rel_err(coth_factor(hot, 2.0), (e2 + 1) / (e2 - 1)) < 1e-15);

  const double x = 1e-8;
  const hp series = 2 / hp(x) + hp(x) / 6;
  CHECK(rel_err(coth_factor(hot, x), static_cast<double>(series)) < 1e-12);

  CHECK(coth_factor(hot, 1e4) == 1.0);
  CHECK(std::isfinite(coth_factor(hot, 1e300)));
  CHECK_THROWS_AS(coth_factor(hot, 0.0), ValidationError);
  CHECK_THROWS_AS(coth_factor(hot, -1.0), ValidationError);
}

TEST_CASE("coth factor matches 50-digit coth across scales") {
  Gen gen(21);
  ThermalState t{1.0, 1.0};
  for (int i = 0; i < 500; ++i) {
    const double x = gen.log_uniform(1e-7, 80.0);
    const double want = static_cast<double>(support::hp_coth(hp(x) / 2));
    CHECK(rel_err(coth_factor(t, x), want) < 1e-14);
  }
}

TEST_CASE("coth difference") {
  ThermalState t{2.0, 1.0};
  CHECK(coth_difference(t, 1.3, 1.3) == 0.0);
  CHECK(coth_difference(ThermalState{kZeroTemperature, 1.0}, 1.0, 1.7) == 0.0);

  const double w2 = 1.0 + 1e-9;
  const hp omega2 = w2 - 1.0;  // the exact detuning of the doubles
  const hp linear = (hp(2) * omega2 / 2) / (sinh(hp(1)) * sinh(hp(1)));
  CHECK(rel_err(coth_difference(t, 1.0, w2), static_cast<double>(linear)) < 1e-6);
  const hp naive = support::hp_coth_factor(2.0, 1.0, 1.0) - support::hp_coth_factor(2.0, 1.0, w2);
  CHECK(rel_err(coth_difference(t, 1.0, w2), static_cast<double>(naive)) < 1e-12);

  CHECK_THROWS_AS(coth_difference(t, 0.0, 1.0), ValidationError);
  CHECK_THROWS_AS(coth_difference(t, 1.0, -1.0), ValidationError);
}

TEST_CASE("coth difference agrees with 50-digit references and has the right sign") {
  Gen gen(22);
  for (int i = 0; i < 500; ++i) {
    const double beta = gen.log_uniform(1e-3, 1e2);
    const double w1 = gen.log_uniform(0.1, 10.0);
    const double w2 = gen.coin() ? w1 * (1.0 + gen.uniform(-1e-6, 1e-6)) : gen.log_uniform(0.1, 10.0);
    ThermalState t{beta, 1.0};
    const double got = coth_difference(t, w1, w2);
    if (w1 == w2) {
      CHECK(got == 0.0);
      continue;
    }
    CHECK((got < 0.0) == (w1 > w2));
    const hp a = hp(beta) * (hp(w1) - hp(w2)) / 2, b = hp(beta) * w1 / 2, c = hp(beta) * w2 / 2;
    const hp ratio = -sinh(a) / (sinh(b) * sinh(c));
    CHECK(rel_err(got, static_cast<double>(ratio)) < 1e-12);
    // Plain subtraction keeps enough of its 50 digits while coth - 1 ~ 2 e^{-x} stays above 1e-30.
    if (std::max(b, c) < 30) {
      const hp naive = support::hp_coth_factor(beta, 1.0, w1) - support::hp_coth_factor(beta, 1.0, w2);
      CHECK(rel_err(got, static_cast<double>(naive)) < 1e-12);
    }
  }
}

TEST_CASE("response kernel parameters") {
  OscillatorSystem s;
  s.osc2.omega = 1.0;
  const auto k = response_kernel(s);
  CHECK(k.D == 0.5);

  s.thermal.beta = kZeroTemperature;
  const auto cold = response_kernel(s);
  CHECK(cold.c1 == 1.0);
  CHECK(cold.c2 == 1.0);

  s.osc1.mass = 0.0;
  CHECK_THROWS_AS(response_kernel(s), ValidationError);
}

TEST_CASE("closed-form kernel matches the Fock trace") {
  OscillatorSystem s;
  s.osc2 = {2.0, 1.1};
  const auto k = response_kernel(s);
  const auto ws = oracle::make_workspace(s, 1e-12);
  double scale = 0.0, worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double t = 20.0 * i / 49.0;
    const double o = oracle::phi_trace(ws, t);
    scale = std::fmax(scale, std::fabs(o));
    worst = std::fmax(worst, std::fabs(eval_phi(k, t) - o));
  }
  CHECK(worst / scale < 1e-8);
  CHECK(rel_err(eval_phi(response_kernel(canonical_system()), 1.0), oracle::phi_trace(canonical_system(), 1.0, 1e-12)) <
        1e-8);
}

TEST_CASE("kernel vanishes at t = 0 and is odd") {
  Gen gen(23);
  for (int i = 0; i < 100; ++i) {
    const auto k = response_kernel(gen.system());
    CHECK(eval_phi(k, 0.0) == 0.0);
    for (int j = 0; j < 20; ++j) {
      const double t = gen.uniform(-200.0, 200.0);
      CHECK(eval_phi(k, -t) == -eval_phi(k, t));
    }
  }
}

TEST_CASE("kernel is symmetric under oscillator exchange and bounded") {
  Gen gen(24);
  for (int i = 0; i < 100; ++i) {
    const auto s = gen.system();
    auto swapped = s;
    std::swap(swapped.osc1, swapped.osc2);
    const auto k = response_kernel(s);
    const auto ks = response_kernel(swapped);
    const double bound = k.D * (k.c1 + k.c2);
    for (int j = 0; j < 20; ++j) {
      const double t = gen.uniform(0.0, 100.0);
      CHECK(std::fabs(eval_phi(k, t) - eval_phi(ks, t)) <= 1e-15 * bound);
      CHECK(std::fabs(eval_phi(k, t)) <= bound * (1.0 + 1e-15));
    }
  }
}

TEST_CASE("grid evaluation is identical serial and parallel") {
  const auto k = response_kernel(canonical_system());
  std::vector<double> t(4001), a(t.size()), b(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = 0.37 * static_cast<double>(i);
  eval_phi_grid(k, t, a, Execution::Serial);
  eval_phi_grid(k, t, b, Execution::Parallel);
  CHECK(a == b);
  CHECK(a[17] == eval_phi(k, t[17]));
}
