#include <benchmark/benchmark.h>

#include "mmc/balancing.hpp"
#include "mmc/baselines.hpp"
#include "mmc/generators.hpp"
#include "mmc/graph_algorithms.hpp"
#include "mmc/rounding.hpp"
#include "mmc/solver_area.hpp"
#include "mmc/solver_bal.hpp"

namespace {

using namespace mmc;

// Error against Karp and passes through the graph, averaged over iterations.
void report(benchmark::State& state, double err, double passes) {
  state.counters["err"] = benchmark::Counter(err, benchmark::Counter::kAvgIterations);
  state.counters["passes"] = benchmark::Counter(passes, benchmark::Counter::kAvgIterations);
}

void BM_Karp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const WeightedDigraph g = complete_digraph(n, -1, 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(karp_mmc(g).mu);
  state.counters["m"] = g.num_edges();
}
BENCHMARK(BM_Karp)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond);

void BM_AmmcBal(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const double eps = 1.0 / static_cast<double>(state.range(1));
  const WeightedDigraph g = complete_digraph(n, -1, 1, 1);
  const double mu = karp_mmc(g).mu;
  BalSolverConfig cfg;
  cfg.eps = eps;
  double err = 0.0, passes = 0.0;
  for (auto _ : state) {
    ++cfg.seed;
    const SolveReport r = ammc_bal(g, cfg);
    err += r.mean - mu;
    passes += r.passes;
  }
  report(state, err, passes);
  state.counters["m"] = g.num_edges();
}
BENCHMARK(BM_AmmcBal)
    ->ArgsProduct({{32, 64, 128, 256}, {10, 50}})
    ->Unit(benchmark::kMillisecond);

void BM_AmmcArea(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const WeightedDigraph g = complete_digraph(n, -1, 1, 1);
  const double mu = karp_mmc(g).mu;
  AreaSolverConfig cfg;
  cfg.eps = 0.1;
  if (state.range(1) == 1) cfg.options = AreaOptions::tuned();
  double err = 0.0, passes = 0.0;
  for (auto _ : state) {
    const SolveReport r = ammc_area(g, cfg);
    err += r.mean - mu;
    passes += r.passes;
  }
  report(state, err, passes);
}
// Second argument: 0 theory constants, 1 tuned profile.
BENCHMARK(BM_AmmcArea)
    ->Args({16, 0})
    ->Args({16, 1})
    ->Args({32, 1})
    ->Args({64, 1})
    ->Unit(benchmark::kMillisecond);

void BM_RandomOsborne(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const WeightedDigraph g = complete_digraph(n, -1, 1, 2);
  const BalanceProblem prob(g, default_eta(g.num_edges(), 0.1), 1e-3);
  std::uint64_t seed = 0;
  double passes = 0.0;
  for (auto _ : state) passes += random_osborne(prob, ++seed).passes;
  state.counters["passes"] = benchmark::Counter(passes, benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_RandomOsborne)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond);

void BM_RoundPipeline(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const WeightedDigraph g = complete_digraph(n, -1, 1, 3);
  const BalanceProblem prob(g, default_eta(g.num_edges(), 0.1), 1e-4);
  const BalanceResult bal = random_osborne(prob, 1);
  const EdgeFlow p = build_balanced_flow(bal.x, prob).p;
  const int dt = adiam(g).d_tilde;
  for (auto _ : state) benchmark::DoNotOptimize(round_pipeline(g, p, 0.1, dt).extraction.cycle.mean);
}
BENCHMARK(BM_RoundPipeline)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond);

void BM_ReductionDemo(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const WeightedDigraph g = random_unit_weight_no_negative_cycle(n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(reduction_demo(g, 0, 0.1, 1).dist.data());
}
BENCHMARK(BM_ReductionDemo)->RangeMultiplier(2)->Range(16, 64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
