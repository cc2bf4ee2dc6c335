#include <benchmark/benchmark.h>

#include "logbbm/experiments.hpp"
#include "logbbm/simulator.hpp"

using namespace logbbm;

// Per-event cost at growing population scale.  K rescales the pair rate to
// c/K, which pushes the stationary population to roughly K particles.  At a
// fixed event budget small K spans far more process time, so genealogy labels
// grow deeper and their copy cost dominates the per-event figure there.
static void BM_SimulatorEvents(benchmark::State& state) {
  const auto K = static_cast<std::uint32_t>(state.range(0));
  SimConfig cfg;
  cfg.c = 1.0;
  cfg.K = K;
  cfg.t_end = 1e9;  // effectively unbounded; we stop on the event count below
  cfg.n0 = 0;       // stationary start
  const std::uint64_t events_per_iter = 20'000;

  std::uint64_t seed = 1;
  std::uint64_t total = 0;
  for (auto _ : state) {
    Rng rng(Rng::child_seed(9000, seed++));
    PopulationState s = init_system(cfg, rng);
    for (std::uint64_t e = 0; e < events_per_iter; ++e) advance_to_next_event(s, rng);
    benchmark::DoNotOptimize(s.particles.data());
    total += events_per_iter;
  }
  state.SetItemsProcessed(static_cast<int64_t>(total));
}
BENCHMARK(BM_SimulatorEvents)->Arg(1)->Arg(16)->Arg(256)->Unit(benchmark::kMillisecond);

// Full renewal cycles, the unit of work behind the velocity estimator.
static void BM_RenewalCycle(benchmark::State& state) {
  const double c = static_cast<double>(state.range(0)) / 10.0;
  std::uint64_t seed = 1;
  std::uint64_t cycles = 0;
  for (auto _ : state) {
    Rng rng(Rng::child_seed(9100, seed++));
    const RenewalRecord rec = sample_renewal_cycle(c, rng);
    benchmark::DoNotOptimize(rec.displacement);
    ++cycles;
  }
  state.SetItemsProcessed(static_cast<int64_t>(cycles));
}
BENCHMARK(BM_RenewalCycle)->Arg(2)->Arg(10)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
