// Serial reference against the OpenMP path for each data-parallel kernel.
// Run with OMP_NUM_THREADS set to compare thread counts.

#include <benchmark/benchmark.h>

#include <vector>

#include "casimir/dissipation.hpp"
#include "casimir/forces.hpp"
#include "casimir/numerics.hpp"
#include "casimir/oracle.hpp"
#include "casimir/response.hpp"

using namespace casimir;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) == 0 ? Execution::Serial : Execution::Parallel; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

void BM_FirstMomentQuadrature(benchmark::State& state) {
  auto s = canonical_system();
  s.motion.eta = 1e-3;
  for (auto _ : state) benchmark::DoNotOptimize(friction_moment_quadrature(s, {}, mode(state)).value);
  label(state);
}

void BM_FockTraceGrid(benchmark::State& state) {
  auto s = canonical_system();
  s.thermal.beta = 0.5;
  const auto ws = oracle::make_workspace(s, 1e-12);
  std::vector<double> t(4096), out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = 0.01 * static_cast<double>(i);
  for (auto _ : state) {
    oracle::phi_trace_grid(ws, t, out, mode(state));
    benchmark::DoNotOptimize(out.data());
  }
  label(state);
}

void BM_SpectralDensity(benchmark::State& state) {
  auto s = canonical_system();
  s.motion.eta = 1e-3;
  const auto grid = detuning_grid(0.4, s.motion.eta);
  for (auto _ : state) benchmark::DoNotOptimize(friction_spectral_density(s, grid, mode(state)).density.data());
  label(state);
}

void BM_NestedDissipation(benchmark::State& state) {
  auto s = canonical_system();
  s.motion.eta = 5e-3;
  const auto kernel = phi_AA_from_motion(s);
  for (auto _ : state)
    benchmark::DoNotOptimize(dissipation_general(damped_ramp(s.motion.eta), kernel, s.motion.eta, {}, mode(state)).energy);
  label(state);
}

}  // namespace

BENCHMARK(BM_FirstMomentQuadrature)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FockTraceGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpectralDensity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NestedDissipation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
