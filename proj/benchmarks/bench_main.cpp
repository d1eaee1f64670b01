#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "monorun/exact.hpp"
#include "monorun/montecarlo.hpp"
#include "monorun/scan.hpp"

namespace {

using namespace monorun;

std::vector<Rank> shuffled(std::size_t n) {
  std::vector<Rank> buffer;
  auto rng = mc::trial_stream(1, 0);
  mc::shuffle_into(buffer, n, rng);
  return buffer;
}

void BM_Shuffle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Rank> buffer;
  std::uint64_t trial = 0;
  for (auto _ : state) {
    auto rng = mc::trial_stream(7, trial++);
    mc::shuffle_into(buffer, n, rng);
    benchmark::DoNotOptimize(buffer.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Shuffle)->RangeMultiplier(10)->Range(10, 1'000'000);

void BM_Longest(benchmark::State& state) {
  const auto p = shuffled(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(longest_monotone_block(p));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Longest)->RangeMultiplier(10)->Range(10, 1'000'000);

void BM_ScanCounts(benchmark::State& state) {
  const auto p = shuffled(static_cast<std::size_t>(state.range(0)));
  const std::vector<std::size_t> ks = {3, 4, 5, 6, 7, 8};
  MultiCounts mc;
  for (auto _ : state) {
    scan_counts(p, ks, mc);
    benchmark::DoNotOptimize(mc.windows.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ScanCounts)->RangeMultiplier(10)->Range(100, 1'000'000);

void BM_Trials(benchmark::State& state) {
  mc::TrialConfig cfg;
  cfg.n = static_cast<std::size_t>(state.range(0));
  cfg.ks = {4};
  cfg.trials = 1'000;
  for (auto _ : state) benchmark::DoNotOptimize(mc::run_trials(cfg).longest.counts.size());
  state.SetItemsProcessed(state.iterations() * 1'000);
}
BENCHMARK(BM_Trials)->Arg(50)->Arg(10'000);

void BM_Enumerate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exact::enumerate_all(n).total());
}
BENCHMARK(BM_Enumerate)->DenseRange(6, 9)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
