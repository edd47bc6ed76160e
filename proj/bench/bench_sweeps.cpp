// Serial reference against the OpenMP pool on the two heavy sweeps.
#include <benchmark/benchmark.h>

#include "dualweight/suites.hpp"

namespace {

void BM_RootInequalityRays(benchmark::State& state) {
  const int jobs = static_cast<int>(state.range(0));
  const auto systems = dw::default_systems(4);
  for (auto _ : state) {
    auto rows = dw::run_suite("root-inequality-rays", systems, 4, jobs);
    benchmark::DoNotOptimize(rows);
  }
}
BENCHMARK(BM_RootInequalityRays)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ParabolicLemmas(benchmark::State& state) {
  const int jobs = static_cast<int>(state.range(0));
  const std::vector<std::string> systems{"A4", "B4", "D4", "F4"};
  for (auto _ : state) {
    auto rows = dw::run_suite("parabolic-lemmas", systems, 4, jobs);
    benchmark::DoNotOptimize(rows);
  }
}
BENCHMARK(BM_ParabolicLemmas)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Simulation(benchmark::State& state) {
  dw::SimulateOptions opt;
  opt.systems = {"A3", "B3", "C3", "A2xA1"};
  opt.horizon = 32;
  opt.traces = 20;
  opt.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto rows = dw::run_simulation(opt);
    benchmark::DoNotOptimize(rows);
  }
}
BENCHMARK(BM_Simulation)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
