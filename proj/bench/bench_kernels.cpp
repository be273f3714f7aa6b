// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "ssfractal/cantor.hpp"
#include "ssfractal/dimension.hpp"
#include "ssfractal/ifs.hpp"

namespace {

using ssf::Execution;

void iterate_cantor(benchmark::State& state, Execution execution) {
  const auto sys = ssf::SimilitudeSystem::cantor();
  const auto sched = ssf::Schedule::full(2);
  const auto seed = ssf::IntervalSet::closed(0, 1);
  ssf::IterateOptions options;
  options.execution = execution;
  const auto depth = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ssf::iterate(sys, sched, depth, seed, options));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << depth));
}

void monte_carlo(benchmark::State& state, Execution execution) {
  ssf::cantor::MonteCarloConfig config;
  config.samples = static_cast<std::size_t>(state.range(0));
  config.depth = 100'000;
  config.seed = 1;
  config.execution = execution;
  for (auto _ : state) benchmark::DoNotOptimize(ssf::cantor::monte_carlo_dimension(config));
}

void box_counting(benchmark::State& state, Execution execution) {
  const auto level = ssf::cantor::middle_third_level(static_cast<std::size_t>(state.range(0)));
  std::vector<ssf::Rational> scales;
  for (unsigned long j = 1; j <= 10; ++j) scales.push_back(ssf::pow(ssf::make_rational(1, 3), j));
  for (auto _ : state) benchmark::DoNotOptimize(ssf::box_counting_dimension(level, scales, execution));
}

}  // namespace

BENCHMARK_CAPTURE(iterate_cantor, serial, Execution::serial)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(iterate_cantor, parallel, Execution::parallel)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(monte_carlo, serial, Execution::serial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(monte_carlo, parallel, Execution::parallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(box_counting, serial, Execution::serial)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(box_counting, parallel, Execution::parallel)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
