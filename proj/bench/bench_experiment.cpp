// Serial reference loop vs. the OpenMP run loop on identical workloads.

#include <benchmark/benchmark.h>

#include "crsched/harness.hpp"

namespace {

crsched::ExperimentConfig workload(crsched::Algorithm algorithm, int runs) {
  crsched::ExperimentConfig config;
  config.algorithm = algorithm;
  config.runs = runs;
  return config;
}

void BM_SerialCollaborative(benchmark::State& state) {
  const auto config = workload(crsched::Algorithm::Collaborative, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(crsched::run_experiment_serial(config));
  state.SetItemsProcessed(state.iterations() * config.runs * config.epochs);
}

void BM_ParallelCollaborative(benchmark::State& state) {
  const auto config = workload(crsched::Algorithm::Collaborative, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(crsched::run_experiment(config));
  state.SetItemsProcessed(state.iterations() * config.runs * config.epochs);
}

void BM_SerialCompetitive(benchmark::State& state) {
  const auto config = workload(crsched::Algorithm::Competitive, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(crsched::run_experiment_serial(config));
  state.SetItemsProcessed(state.iterations() * config.runs * config.epochs);
}

void BM_ParallelCompetitive(benchmark::State& state) {
  const auto config = workload(crsched::Algorithm::Competitive, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(crsched::run_experiment(config));
  state.SetItemsProcessed(state.iterations() * config.runs * config.epochs);
}

}  // namespace

BENCHMARK(BM_SerialCollaborative)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParallelCollaborative)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SerialCompetitive)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParallelCompetitive)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
