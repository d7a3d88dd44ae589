#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "mmc/baselines.hpp"
#include "mmc/errors.hpp"
#include "mmc/generators.hpp"
#include "mmc/graph_algorithms.hpp"
#include "support/oracles.hpp"

namespace mmc {
namespace {

using testing::Rng;
constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(Karp, Examples) {
  const WeightedDigraph tri(3, {{0, 1, 1}, {1, 2, 2}, {2, 0, 3}});
  const MmcResult a = karp_mmc(tri);
  EXPECT_DOUBLE_EQ(a.mu, 2.0);
  EXPECT_DOUBLE_EQ(a.cycle.mean, 2.0);

  const WeightedDigraph two(4, {{0, 1, 1}, {1, 0, 2}, {2, 3, 3}, {3, 2, 5}});
  const MmcResult b = karp_mmc(two);
  EXPECT_DOUBLE_EQ(b.mu, 1.5);
  EXPECT_EQ(b.cycle.length(), 2u);
  EXPECT_EQ(b.cycle.vertices[0] / 2, 0);

  EXPECT_THROW(karp_mmc(WeightedDigraph(3, {{0, 1, 1}, {1, 2, 1}})), NoCycle);
  EXPECT_DOUBLE_EQ(karp_mmc(WeightedDigraph(1, {{0, 0, -2.5}})).mu, -2.5);
}

TEST(Karp, MatchesEnumerationAndSubsetOracle) {
  Rng rng(71);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const WeightedDigraph g = testing::random_digraph(rng, n, 0.4, -1, 1, trial % 4 == 0);
    const double oracle = testing::brute_force_mu(g);
    if (oracle == kInf) {
      EXPECT_THROW(karp_mmc(g), NoCycle);
      EXPECT_THROW(enumerate_cycles_mmc(g), NoCycle);
      continue;
    }
    const MmcResult k = karp_mmc(g);
    const MmcResult e = enumerate_cycles_mmc(g);
    ASSERT_NEAR(k.mu, oracle, 1e-12);
    ASSERT_NEAR(e.mu, oracle, 1e-12);
    ASSERT_NEAR(k.cycle.mean, k.mu, 1e-12);
    ASSERT_NO_THROW(Cycle::from_edges(g, k.cycle.edges));
  }
}

TEST(Enumeration, Examples) {
  const WeightedDigraph tri(3, {{0, 1, 1}, {1, 2, 2}, {2, 0, 6}});
  EXPECT_DOUBLE_EQ(enumerate_cycles_mmc(tri).mu, 3.0);

  const WeightedDigraph k3(3, {{0, 1, 1}, {1, 0, 2}, {0, 2, 3}, {2, 0, 4},
                               {1, 2, 5}, {2, 1, 6}});
  int count = 0;
  for_each_simple_cycle(k3, [&](const Cycle&) { ++count; });
  EXPECT_EQ(count, 5);
  EXPECT_DOUBLE_EQ(enumerate_cycles_mmc(k3).mu, 1.5);

  const WeightedDigraph loop(3, {{0, 1, 0}, {1, 2, 0}, {2, 0, 0}, {1, 1, -0.5}});
  const MmcResult r = enumerate_cycles_mmc(loop);
  EXPECT_DOUBLE_EQ(r.mu, -0.5);
  EXPECT_EQ(r.cycle.length(), 1u);

  EXPECT_THROW(enumerate_cycles_mmc(directed_ring(std::vector<double>(13, 1.0))),
               PreconditionViolation);
}

void expect_same_distance(double got, double want) {
  if (want == kInf) {
    EXPECT_EQ(got, kInf);
  } else {
    EXPECT_NEAR(got, want, 1e-12);
  }
}

TEST(ShortestPaths, BellmanFordAndDijkstraMatchFloyd) {
  Rng rng(73);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 10);
    const bool nonneg = trial % 2 == 0;
    const WeightedDigraph g = testing::random_digraph(rng, n, 0.4, nonneg ? 0.0 : -0.3, 1.0);
    const auto floyd = testing::floyd_distances(g);
    bool negative_cycle = false;
    for (int v = 0; v < n; ++v) negative_cycle |= floyd[v][v] < 0.0;
    const auto bf = bellman_ford(g, 0);
    if (negative_cycle) {
      // Only cycles reachable from 0 matter to Bellman-Ford.
      bool reachable = false;
      for (int v = 0; v < n; ++v) reachable |= floyd[0][v] < kInf && floyd[v][v] < 0.0;
      ASSERT_EQ(bf.has_value(), !reachable);
      continue;
    }
    ASSERT_TRUE(bf.has_value());
    for (int v = 0; v < n; ++v) expect_same_distance(bf->dist[v], floyd[0][v]);
    if (nonneg) {
      const ShortestPaths dj = dijkstra(g, 0);
      for (int v = 0; v < n; ++v) expect_same_distance(dj.dist[v], floyd[0][v]);
    }
  }
}

// Parent vertex array from a BFS out-tree.
std::vector<Vertex> bfs_parents(const WeightedDigraph& g, Vertex s) {
  const SpTreePair t = sp_tree_pair(g, s);
  std::vector<Vertex> parent(g.num_vertices(), -1);
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (v != s) parent[v] = g.tail(t.from_root_edge[v]);
  return parent;
}

bool relaxable_edge_exists(const WeightedDigraph& g, const std::vector<std::int64_t>& d) {
  for (const Edge& e : g.edges())
    if (d[e.tail] + static_cast<std::int64_t>(e.weight) < d[e.head]) return true;
  return false;
}

TEST(SsspCorrect, OptimalTreeUnchanged) {
  const WeightedDigraph g(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}, {0, 2, 5}});
  CorrectionStats stats;
  const SsspTree t = sssp_correct(g, 0, {-1, 0, 1, 2}, &stats);
  EXPECT_EQ(t.dist, (std::vector<std::int64_t>{0, 1, 2, 3}));
  EXPECT_EQ(t.parent, (std::vector<Vertex>{-1, 0, 1, 2}));
  EXPECT_EQ(stats.processed_vertices, 0);
}

TEST(SsspCorrect, MisroutedVertex) {
  // Tree reaches 2 via 0 -> 2 (weight 3) instead of 0 -> 1 -> 2 (weight 1).
  const WeightedDigraph g(4, {{0, 1, 0}, {1, 2, 1}, {0, 2, 3}, {2, 3, 1}, {3, 0, 1}});
  const std::vector<Vertex> parent{-1, 0, 0, 2};
  EXPECT_EQ(tree_distances(g, 0, parent), (std::vector<std::int64_t>{0, 0, 3, 4}));
  CorrectionStats stats;
  const SsspTree t = sssp_correct(g, 0, parent, &stats);
  const auto bf = bellman_ford(g, 0);
  for (int v = 0; v < 4; ++v) EXPECT_EQ(t.dist[v], static_cast<std::int64_t>(bf->dist[v]));
  EXPECT_LE(stats.processed_vertices, 2);
  EXPECT_EQ(t.parent[2], 1);
}

TEST(SsspCorrect, NegativeCycleDetected) {
  const WeightedDigraph g(3, {{0, 1, 1}, {1, 2, -3}, {2, 1, 1}, {2, 0, 1}});
  EXPECT_THROW(sssp_correct(g, 0, {-1, 0, 1}), NegativeCycle);
}

TEST(SsspCorrect, RandomIntegerInstancesMatchBellmanFord) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int n = 2 + static_cast<int>(seed % 14);
    const WeightedDigraph g = random_integer_no_negative_cycle(n, n * 2, 5, seed);
    const std::vector<Vertex> parent = bfs_parents(g, 0);
    const auto initial = tree_distances(g, 0, parent);
    CorrectionStats stats;
    const SsspTree t = sssp_correct(g, 0, parent, &stats);
    const auto bf = bellman_ford(g, 0);
    ASSERT_TRUE(bf.has_value());
    std::int64_t excess = 0;
    for (int v = 0; v < n; ++v) {
      ASSERT_EQ(t.dist[v], static_cast<std::int64_t>(bf->dist[v]));
      excess += initial[v] - t.dist[v];
    }
    ASSERT_FALSE(relaxable_edge_exists(g, t.dist));
    ASSERT_EQ(tree_distances(g, 0, t.parent), t.dist);
    ASSERT_LE(stats.processed_vertices, excess);
  }
}

TEST(ReductionDemo, Examples) {
  std::vector<Edge> zero;
  for (int u = 0; u < 5; ++u)
    for (int v = 0; v < 5; ++v)
      if (u != v) zero.push_back({u, v, 0.0});
  const ReductionResult z = reduction_demo(WeightedDigraph(5, zero), 0, 0.1);
  for (std::int64_t d : z.dist) EXPECT_EQ(d, 0);

  const WeightedDigraph g = random_unit_weight_no_negative_cycle(8, 5);
  const auto bf = bellman_ford(g, 0);
  const ReductionResult r = reduction_demo(g, 0, 0.1, 1);
  for (int v = 0; v < 8; ++v) EXPECT_EQ(r.dist[v], static_cast<std::int64_t>(bf->dist[v]));
  EXPECT_GE(r.min_reduced_weight, -0.1 - 1e-6);

  const ReductionResult vac = reduction_demo(g, 0, 3.0, 1);
  EXPECT_EQ(vac.dist, r.dist);
  EXPECT_LE(vac.stats.processed_vertices, vac.initial_excess);
}

TEST(ReductionDemo, RandomUnitWeightGraphsMatchBellmanFord) {
  std::int64_t tight_excess = 0, vacuous_excess = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int n = 3 + static_cast<int>(seed % 10);
    const WeightedDigraph g = random_unit_weight_no_negative_cycle(n, seed);
    const auto bf = bellman_ford(g, 0);
    ASSERT_TRUE(bf.has_value());
    for (double eps : {0.1, 0.5, 3.0}) {
      const ReductionResult r = reduction_demo(g, 0, eps, seed);
      for (int v = 0; v < n; ++v) ASSERT_EQ(r.dist[v], static_cast<std::int64_t>(bf->dist[v]));
      ASSERT_LE(r.stats.processed_vertices, r.initial_excess);
      if (eps == 0.1) tight_excess += r.initial_excess;
      if (eps == 3.0) vacuous_excess += r.initial_excess;
    }
  }
  // A useful potential leaves less to correct than none at all.
  EXPECT_LE(tight_excess, vacuous_excess);
}

}  // namespace
}  // namespace mmc
