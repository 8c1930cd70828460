// Serial reference runners against their OpenMP counterparts.
#include <benchmark/benchmark.h>
#include <omp.h>

#include "rtss/domains/airspace.hpp"
#include "rtss/domains/airspace_stats.hpp"
#include "rtss/harness/experiment.hpp"

namespace {

using namespace rtss;

harness::ExperimentConfig grid() {
  harness::ExperimentConfig c;
  c.length = 1000;
  c.max_altitude = 20;
  c.p_obs = 0.05;
  c.algorithms = {"safe-rts", "rtfs"};
  c.bounds = {30, 100};
  c.repetitions = 4;
  c.audit = false;
  return c;
}

void BM_GridSerial(benchmark::State& state) {
  const auto c = grid();
  for (auto _ : state) benchmark::DoNotOptimize(harness::run_grid_serial(c));
}

void BM_GridParallel(benchmark::State& state) {
  const auto c = grid();
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(harness::run_grid(c, jobs));
}

const domains::AirspaceDomain& stats_domain() {
  static const domains::AirspaceDomain d(domains::AirspaceInstance::generate(10000, 20, 0.05, 1));
  return d;
}

domains::StatsOptions stats_options() {
  domains::StatsOptions o;
  o.samples_per_altitude = 500;
  o.seed = 1;
  return o;
}

void BM_StatsSerial(benchmark::State& state) {
  const auto& d = stats_domain();
  for (auto _ : state) benchmark::DoNotOptimize(domains::airspace_stats_serial(d, stats_options()));
}

void BM_StatsParallel(benchmark::State& state) {
  const auto& d = stats_domain();
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(domains::airspace_stats(d, stats_options()));
}

}  // namespace

BENCHMARK(BM_GridSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StatsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StatsParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
