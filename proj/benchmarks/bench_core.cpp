#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "selberg/coefficients.hpp"
#include "selberg/dirichlet_poly.hpp"
#include "selberg/statistics.hpp"
#include "selberg/tau.hpp"

using namespace selberg;

static void BM_SieveDelta(benchmark::State& state) {
  const auto spec = ramanujan_delta_spec();
  const auto X = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sieve(spec, X));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SieveDelta)->RangeMultiplier(10)->Range(10'000, 1'000'000)->Unit(benchmark::kMillisecond);

static void BM_TauQExpansion(benchmark::State& state) {
  const auto X = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tau_qexpansion(X));
}
BENCHMARK(BM_TauQExpansion)->RangeMultiplier(10)->Range(10'000, 1'000'000)->Unit(benchmark::kMillisecond);

static void BM_SecondMoment(benchmark::State& state) {
  const auto N = static_cast<std::uint64_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::vector<double> a(N);
  for (auto& v : a) v = (rng() & 1) ? 1.0 : -1.0;
  const auto poly = DirichletPolynomial::make(N + 1, std::move(a));
  for (auto _ : state) benchmark::DoNotOptimize(second_moment(poly, 1000.0));
}
BENCHMARK(BM_SecondMoment)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_WindowSweep(benchmark::State& state) {
  const auto table = sieve(ramanujan_delta_spec(), 200'000);
  const auto H = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    double acc = 0.0;
    for (std::uint64_t x = 1000; x + H <= 100'000; x += 997) acc += window_sums(table, x, H, 10).S2;
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_WindowSweep)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
