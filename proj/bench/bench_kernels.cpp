#include <benchmark/benchmark.h>

#include "choicetree/experiments.hpp"

using namespace ctree;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) ? Execution::parallel : Execution::serial;
}

void BM_TreeHistogram(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(tree_histogram(TreeAlgorithm::wilson, 8, 2, StepRule::maximal, 20000, 1, mode(state)));
  }
}

void BM_LeSamples(benchmark::State& state) {
  const std::vector<std::int64_t> steps{1000, 5000};
  for (auto _ : state) {
    benchmark::DoNotOptimize(le_samples(10000, 2, StepRule::maximal, steps, 500, 1, mode(state)));
  }
}

void BM_AbSticks(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(ab_stick_samples(100000, 2, StepRule::maximal, 4, 500, 1, mode(state)));
  }
}

}  // namespace

// argument 0 runs the serial reference, 1 the OpenMP kernel
BENCHMARK(BM_TreeHistogram)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LeSamples)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AbSticks)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
