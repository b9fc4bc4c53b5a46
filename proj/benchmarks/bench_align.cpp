#include <benchmark/benchmark.h>

#include "align/align.hpp"

namespace {

using align::ModelParams;

align::ModelParams sparse(std::size_t n) { return {n, 20.0 / static_cast<double>(n), 0.6}; }

void BM_Generate(benchmark::State& state) {
  const auto params = sparse(static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(align::generate(params, seed++));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Generate)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Complexity();

void BM_IsGood(benchmark::State& state) {
  const auto params = sparse(static_cast<std::size_t>(state.range(0)));
  const auto inst = align::generate(params, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(align::is_good(inst.g_a, inst.g_b, inst.pi_star, params, 0.5));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IsGood)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Complexity();

void BM_KCore(benchmark::State& state) {
  const auto inst = align::generate(sparse(static_cast<std::size_t>(state.range(0))), 2);
  for (auto _ : state) benchmark::DoNotOptimize(align::k_core(inst.g_a, 5.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KCore)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Complexity();

void BM_FindGood(benchmark::State& state) {
  const ModelParams params{static_cast<std::size_t>(state.range(0)), 0.4, 0.8};
  const auto inst = align::generate(params, 3);
  for (auto _ : state) benchmark::DoNotOptimize(align::find_good(inst.g_a, inst.g_b, params, 0.5));
}
BENCHMARK(BM_FindGood)->DenseRange(6, 8);

void BM_MapEstimate(benchmark::State& state) {
  const ModelParams params{static_cast<std::size_t>(state.range(0)), 0.4, 0.8};
  const auto inst = align::generate(params, 4);
  for (auto _ : state) benchmark::DoNotOptimize(align::map_estimate(inst.g_a, inst.g_b));
}
BENCHMARK(BM_MapEstimate)->DenseRange(6, 8);

void BM_Psi(benchmark::State& state) {
  double mu = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(align::psi(3.0, mu));
    mu = mu > 100.0 ? 1.0 : mu + 0.37;
  }
}
BENCHMARK(BM_Psi);

void BM_Ck(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(align::c_k(static_cast<double>(state.range(0))));
}
BENCHMARK(BM_Ck)->Arg(3)->Arg(10);

void BM_ChernoffZeta(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(align::chernoff_zeta(1.7, 0.3, 0.05));
}
BENCHMARK(BM_ChernoffZeta);

void BM_Rencontres(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(align::rencontres(n, n / 2));
}
BENCHMARK(BM_Rencontres)->Arg(20)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
