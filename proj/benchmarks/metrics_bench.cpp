#include <benchmark/benchmark.h>

#include "peerscope/graph.hpp"
#include "peerscope/metrics.hpp"
#include "peerscope/rng.hpp"

using namespace peerscope;

namespace {

// Sparse random graph with about four edges per node.
AuthorGraph sparse_graph(std::size_t n, bool directed) {
  AuthorGraph g(directed);
  for (std::size_t v = 0; v < n; ++v) g.add_node("a" + std::to_string(v));
  Rng rng(n);
  for (std::size_t e = 0; e < 4 * n; ++e) g.add_edge(rng.below(n), rng.below(n));
  return g;
}

void BM_Betweenness(benchmark::State& state) {
  const auto g = sparse_graph(static_cast<std::size_t>(state.range(0)), false);
  for (auto _ : state) benchmark::DoNotOptimize(betweenness_centrality(g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Betweenness)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_Closeness(benchmark::State& state) {
  const auto g = sparse_graph(static_cast<std::size_t>(state.range(0)), false);
  for (auto _ : state) benchmark::DoNotOptimize(closeness_centrality(g));
}
BENCHMARK(BM_Closeness)->Range(64, 1024);

void BM_PageRank(benchmark::State& state) {
  const auto g = sparse_graph(static_cast<std::size_t>(state.range(0)), true);
  for (auto _ : state) benchmark::DoNotOptimize(pagerank(g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PageRank)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_KShell(benchmark::State& state) {
  const auto g = sparse_graph(static_cast<std::size_t>(state.range(0)), false);
  for (auto _ : state) benchmark::DoNotOptimize(kshell(g));
}
BENCHMARK(BM_KShell)->Range(256, 16384);

}  // namespace

BENCHMARK_MAIN();
