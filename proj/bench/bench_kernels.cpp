// Serial reference versus the OpenMP kernels. Worker count is the second
// benchmark argument where it applies.

#include <benchmark/benchmark.h>

#include "qrsum/char_sums.hpp"
#include "qrsum/reference.hpp"
#include "qrsum/search.hpp"
#include "qrsum/sumset.hpp"

using namespace qrsum;

static void BM_SumDistributionReference(benchmark::State& state) {
  const Prime p(static_cast<std::int64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::sum_distribution(4, p));
}
BENCHMARK(BM_SumDistributionReference)->Arg(31)->Arg(53)->Unit(benchmark::kMillisecond);

static void BM_SumDistributionExhaustive(benchmark::State& state) {
  const Prime p(static_cast<std::int64_t>(state.range(0)));
  const EnumerationOptions opts{EnumerationOptions{}.budget, static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(sum_distribution(4, p, Exhaustive{}, opts));
}
BENCHMARK(BM_SumDistributionExhaustive)
    ->Args({31, 1})
    ->Args({53, 1})
    ->Args({53, 4})
    ->Args({101, 1})
    ->Args({101, 4})
    ->Unit(benchmark::kMillisecond);

static void BM_SumDistributionSampled(benchmark::State& state) {
  const Prime p(499);
  const EnumerationOptions opts{EnumerationOptions{}.budget, static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(sum_distribution(4, p, Sampled{200000, 1}, opts));
}
BENCHMARK(BM_SumDistributionSampled)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_EnergyReference(benchmark::State& state) {
  const Prime p(101);
  const auto a = random_subset(p, 12, 12, 1, 0), b = random_subset(p, 12, 12, 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(reference::additive_energy(a, b));
}
BENCHMARK(BM_EnergyReference);

static void BM_EnergyProfile(benchmark::State& state) {
  const Prime p(101);
  const auto a = random_subset(p, 12, 12, 1, 0), b = random_subset(p, 12, 12, 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(build_profile(a, b).energy);
}
BENCHMARK(BM_EnergyProfile);

static void BM_AdditiveCharactersReference(benchmark::State& state) {
  const Prime p(static_cast<std::int64_t>(state.range(0)));
  const auto s = random_subset(p, p.value() / 2, p.value() / 2, 1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(reference::additive_char_sums(s));
}
BENCHMARK(BM_AdditiveCharactersReference)->Arg(499)->Arg(4999);

static void BM_AdditiveCharacters(benchmark::State& state) {
  const Prime p(static_cast<std::int64_t>(state.range(0)));
  const auto s = random_subset(p, p.value() / 2, p.value() / 2, 1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(additive_char_power(s, static_cast<int>(state.range(1))));
}
BENCHMARK(BM_AdditiveCharacters)->Args({499, 1})->Args({4999, 1})->Args({4999, 4});

static void BM_DecompositionReference(benchmark::State& state) {
  const Prime p(13);
  for (auto _ : state) benchmark::DoNotOptimize(reference::brute_force_decompositions(p, 2, 4));
}
BENCHMARK(BM_DecompositionReference)->Unit(benchmark::kMillisecond);

static void BM_DecompositionSearch(benchmark::State& state) {
  SearchConfig c{Prime(static_cast<std::int64_t>(state.range(0)))};
  c.use_theorem1_pruning = c.use_lemma5_pruning = false;
  c.worker_count = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(search(c));
}
BENCHMARK(BM_DecompositionSearch)->Args({13, 1})->Args({61, 1})->Args({61, 4})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
