#pragma once

#include <cstdint>
#include <vector>

#include "mmc/graph.hpp"

namespace mmc {

// Random ring through all vertices plus extra_edges distinct random edges;
// weights uniform in [w_lo, w_hi].
WeightedDigraph random_strongly_connected(int n, int extra_edges, double w_lo, double w_hi,
                                          std::uint64_t seed, bool allow_self_loops = false);

// All ordered pairs u != v with uniform weights in [w_lo, w_hi].
WeightedDigraph complete_digraph(int n, double w_lo, double w_hi, std::uint64_t seed);

// 0 -> 1 -> ... -> n-1 -> 0 with the given weights (one per edge, in ring order).
WeightedDigraph directed_ring(const std::vector<double>& weights);

// Complete digraph with weights in {-1, 0, 1} and no negative cycle.
WeightedDigraph random_unit_weight_no_negative_cycle(int n, std::uint64_t seed);

// Strongly connected graph with integer weights in [-max_abs, max_abs] and no
// negative cycle (weights are nonnegative after a hidden integer potential).
WeightedDigraph random_integer_no_negative_cycle(int n, int extra_edges, int max_abs,
                                                 std::uint64_t seed);

struct PlantedInstance {
  WeightedDigraph graph;        // disguised weights
  WeightedDigraph undisguised;  // same edges before the potential shift
  std::vector<double> potential;
  std::vector<Vertex> planted_cycle;
  double planted_mean = 0.0;
};

// Arbitrage-style instance: log exchange rates with spreads normalized to
// [0, 1], a planted Hamiltonian cycle (one edge 0.1, the rest 0.5), and a
// disguise w(i,j) + p_i - p_j with p uniform in [0, 0.1]. Weights and
// potential lie on a dyadic grid so cycle sums are exact.
PlantedInstance gen_arbitrage_like(int n, std::uint64_t seed, double deletion_rate = 0.01);

}  // namespace mmc
