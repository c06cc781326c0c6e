#include <benchmark/benchmark.h>

#include "fockslice/experiments.hpp"

using namespace fockslice;

static void BM_BuildUb(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_ub(N, 1.2e6, Variant::JC, N + 8));
  }
}
BENCHMARK(BM_BuildUb)->Arg(5)->Arg(10)->Arg(20);

static void BM_Vectorize(benchmark::State& state) {
  const Index d = state.range(0);
  const Liouvillian L =
      (engineered_absorption(5, 1.2e6, 4e6, d) +
       thermal_liouvillian(36.0, 0.01, d))
          .scaled(1.0 / 36.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(vectorize(L));
  }
}
BENCHMARK(BM_Vectorize)->Arg(13)->Arg(22);

static void BM_EvolveExp(benchmark::State& state) {
  ScenarioConfig c;
  c.kind = ScenarioKind::FockProtection;
  c.M = 5;
  c.omega = 1.2e6;
  c.dim_override = 13;
  const Liouvillian L = scenario_liouvillian(c);
  const State rho0 = State::thermal(13, 0.01);
  const auto grid = log_tau_grid(static_cast<int>(state.range(0)), 1e-5, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve(rho0, L, grid));
  }
}
BENCHMARK(BM_EvolveExp)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_EvolveTrBdf2(benchmark::State& state) {
  ScenarioConfig c;
  c.kind = ScenarioKind::FockProtection;
  c.M = 5;
  c.omega = 1.2e6;
  c.dim_override = 13;
  const Liouvillian L = scenario_liouvillian(c);
  const State rho0 = State::thermal(13, 0.01);
  const auto grid = log_tau_grid(static_cast<int>(state.range(0)), 1e-5, 1.0);
  EvolveOptions o;
  o.method = Integrator::TrBdf2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve(rho0, L, grid, o));
  }
}
BENCHMARK(BM_EvolveTrBdf2)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_SteadyState(benchmark::State& state) {
  ScenarioConfig c;
  c.kind = ScenarioKind::FockProtection;
  c.M = 5;
  c.omega = 1.2e6;
  c.dim_override = 13;
  const Liouvillian L = scenario_liouvillian(c);
  const Matrix seed = State::fock(13, 5).rho();
  for (auto _ : state) {
    benchmark::DoNotOptimize(steady_state(L, &seed));
  }
}
BENCHMARK(BM_SteadyState)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
