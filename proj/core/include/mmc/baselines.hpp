#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mmc/flow.hpp"
#include "mmc/graph.hpp"

namespace mmc {

struct MmcResult {
  double mu = 0.0;
  Cycle cycle;
};

// Karp's O(nm) dynamic program with every vertex as a zero-length start, so
// any graph with a cycle is accepted. Throws NoCycle for acyclic graphs.
MmcResult karp_mmc(const WeightedDigraph& g);

inline constexpr int kMaxEnumerationVertices = 12;

// Exhaustive simple-cycle enumeration; n <= kMaxEnumerationVertices.
MmcResult enumerate_cycles_mmc(const WeightedDigraph& g);

// Calls visit(cycle) for every simple cycle, each listed once starting at its
// smallest vertex. n <= kMaxEnumerationVertices.
void for_each_simple_cycle(const WeightedDigraph& g,
                           const std::function<void(const Cycle&)>& visit);

struct ShortestPaths {
  std::vector<double> dist;    // +inf when unreachable
  std::vector<EdgeId> parent;  // edge into v on a shortest path, -1 at roots
};

// nullopt when a negative cycle is reachable from the source.
std::optional<ShortestPaths> bellman_ford(const WeightedDigraph& g, Vertex source);

// Nonnegative weights given per edge (defaults to the graph's weights).
ShortestPaths dijkstra(const WeightedDigraph& g, Vertex source,
                       std::span<const double> weights = {});

struct SsspTree {
  Vertex source = 0;
  std::vector<Vertex> parent;  // -1 at the source
  std::vector<std::int64_t> dist;
};

struct CorrectionStats {
  std::int64_t processed_vertices = 0;
  std::int64_t relaxations = 0;
};

// Tree path weights from the source under integer weights.
std::vector<std::int64_t> tree_distances(const WeightedDigraph& g, Vertex source,
                                         const std::vector<Vertex>& parent);

// Repairs a spanning tree rooted at source into a shortest-path tree by
// relaxing edges from an ordered set and shifting whole subtrees. Weights must
// be integers. Throws NegativeCycle when one is detected.
SsspTree sssp_correct(const WeightedDigraph& g, Vertex source,
                      const std::vector<Vertex>& parent, CorrectionStats* stats = nullptr);

struct ReductionResult {
  std::vector<std::int64_t> dist;
  SsspTree tree;
  CorrectionStats stats;
  double min_reduced_weight = 0.0;
  std::int64_t initial_excess = 0;  // sum over v of (tree distance - true distance)
};

// Shortest paths from an approximate min-mean-cycle dual potential:
// reweight, shift by eps, Dijkstra, then tree correction.
ReductionResult reduction_demo(const WeightedDigraph& g, Vertex source, double eps,
                               std::uint64_t seed = 0);

}  // namespace mmc
