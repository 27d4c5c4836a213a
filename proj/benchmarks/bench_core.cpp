#include <benchmark/benchmark.h>

#include <vector>

#include "rpst/inference.hpp"
#include "rpst/oracle.hpp"
#include "rpst/random.hpp"
#include "rpst/ranks.hpp"
#include "rpst/simulation.hpp"
#include "rpst/stats.hpp"

namespace {

std::vector<double> draws(std::size_t n, std::uint64_t seed) {
  rpst::RandomStream rng(seed);
  return rpst::sample_population(rpst::Population::normal(), 0.0, 1.0, n, rng);
}

void BM_RankData(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g1 = draws(n / 2, 1);
  const auto g2 = draws(n - n / 2, 2);
  const auto mod = rpst::ModificationSpec::from_proportion(0.25);
  for (auto _ : state) benchmark::DoNotOptimize(rpst::rank_data(g1, g2, mod));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RankData)->RangeMultiplier(10)->Range(100, 100000)->Complexity();

void BM_NullVariance(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto psi = rpst::TransformSpec::log1p();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        rpst::null_variance(static_cast<double>(n / 2), static_cast<double>(n - n / 2), psi, n / 4));
  }
}
BENCHMARK(BM_NullVariance)->Arg(1000)->Arg(1000000);

void BM_RpstTest(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g1 = draws(n / 2, 3);
  const auto g2 = draws(n - n / 2, 4);
  const auto psi = rpst::TransformSpec::arctan();
  const auto mod = rpst::ModificationSpec::from_proportion(0.5);
  const auto budget = rpst::PrivacyBudget::from_total(1.0);
  rpst::RandomStream rng(5);
  for (auto _ : state) benchmark::DoNotOptimize(rpst::rpst_test(g1, g2, psi, mod, budget, rng));
}
BENCHMARK(BM_RpstTest)->Arg(100)->Arg(1000)->Arg(10000);

void BM_ExactU1Null(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto psi = rpst::TransformSpec::sqrt();
  for (auto _ : state) benchmark::DoNotOptimize(rpst::oracle::exact_u1_null(n, n / 2, 1, psi));
}
BENCHMARK(BM_ExactU1Null)->DenseRange(10, 18, 4);

void BM_SizePowerCell(benchmark::State& state) {
  rpst::SimConfig config;
  config.reps = 200;
  config.seed = 6;
  for (auto _ : state) benchmark::DoNotOptimize(rpst::estimate_size_power(config));
}
BENCHMARK(BM_SizePowerCell)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
