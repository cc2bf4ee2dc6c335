#include <benchmark/benchmark.h>

#include "logbbm/fkpp.hpp"

using namespace logbbm;

// Explicit-Euler throughput in node updates per second; the step count scales
// like 1/dx^2, so halving dx costs 8x per unit of simulated time.
static void BM_CdfSolver(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Grid1D grid{-20.0, 40.0, n};
  const double dt = 0.9 * grid.dx() * grid.dx();
  const double t_end = 0.1;
  const auto ic = heaviside_cdf(grid, 0.0);
  const auto steps = static_cast<std::uint64_t>(t_end / dt) + 1;

  std::uint64_t updates = 0;
  for (auto _ : state) {
    const CdfSolution sol = solve_fkpp_cdf(ic, t_end, dt, {}, t_end);
    benchmark::DoNotOptimize(sol.snapshots.back().values.data());
    updates += steps * n;
  }
  state.SetItemsProcessed(static_cast<int64_t>(updates));
}
BENCHMARK(BM_CdfSolver)->Arg(1201)->Arg(2401)->Arg(4801)->Unit(benchmark::kMillisecond);

// The nonlocal source adds a reverse cumulative integral per step.
static void BM_NonlocalSolver(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Grid1D grid{-12.0, 30.0, n};
  const double dt = 0.9 * grid.dx() * grid.dx();
  const double t_end = 0.1;
  const auto ic = gaussian_density(grid, 0.0, 1.0);
  const auto steps = static_cast<std::uint64_t>(t_end / dt) + 1;

  std::uint64_t updates = 0;
  for (auto _ : state) {
    const DensitySolution sol = solve_fkpp_nonlocal_density(ic, t_end, dt, {}, t_end);
    benchmark::DoNotOptimize(sol.masses.data());
    updates += steps * n;
  }
  state.SetItemsProcessed(static_cast<int64_t>(updates));
}
BENCHMARK(BM_NonlocalSolver)->Arg(841)->Arg(1681)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
