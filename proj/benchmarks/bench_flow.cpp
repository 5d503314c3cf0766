#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "sprank/augment.hpp"
#include "sprank/flow.hpp"
#include "sprank/resilience.hpp"

using namespace sprank;

namespace {

BipartiteGraph random_graph(std::size_t n, std::size_t m, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    edges.push_back({i, i});
    for (std::size_t j = 0; j < m; ++j) {
      if (coin(rng)) edges.push_back({i, j});
    }
  }
  return BipartiteGraph(n, m, std::move(edges));
}

void BM_MaxFlowResilienceNetwork(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = random_graph(n, n + n / 4, 0.2, 1);
  const auto net = flow::build_resilience_network(g, 2);
  for (auto _ : state) benchmark::DoNotOptimize(flow::max_flow(net));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MaxFlowResilienceNetwork)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_StrongResilience(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = random_graph(n, n + n / 4, 0.2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(strong_resilience(g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StrongResilience)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_StrongResilienceLinearScan(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = random_graph(n, n + n / 4, 0.2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(strong_resilience(g, EllSearch::linear_scan));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StrongResilienceLinearScan)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_FairBMatching(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = random_graph(n, n + n / 4, 0.1, 3);
  for (auto _ : state) benchmark::DoNotOptimize(fair_b_matching(g, 2));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FairBMatching)->RangeMultiplier(2)->Range(8, 64)->Complexity();

}  // namespace

BENCHMARK_MAIN();
