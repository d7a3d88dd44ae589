#pragma once

#include <vector>

#include "mmc/aux_memory.hpp"
#include "mmc/graph.hpp"

namespace mmc {

inline constexpr int kUnreachable = -1;
inline constexpr EdgeId kNoEdge = -1;

enum class Direction { kForward, kBackward };

// Strongly connected components, sources of the condensation first.
std::vector<std::vector<Vertex>> scc_decompose(const WeightedDigraph& g);

bool is_strongly_connected(const WeightedDigraph& g);

// Unweighted BFS from root; kBackward follows edges in reverse (distances to root).
std::vector<int> bfs_distances(const WeightedDigraph& g, Vertex root,
                               Direction dir = Direction::kForward);

struct DiameterEstimate {
  int d_tilde = 0;
  int max_to_root = 0;
  int max_from_root = 0;
};

// Max BFS distance into root plus max BFS distance out of root; d <= d_tilde <= 2d.
DiameterEstimate adiam(const WeightedDigraph& g, Vertex root = 0,
                       AuxMeter* meter = nullptr);

// All-pairs BFS. For tests and small instances only.
int exact_diameter(const WeightedDigraph& g);

// BFS trees into and out of a root. to_root_edge[u] is the first edge of a
// shortest path u -> root; from_root_edge[u] is the last edge of a shortest
// path root -> u. Both are kNoEdge at the root.
struct SpTreePair {
  Vertex root = 0;
  AuxVector<EdgeId> to_root_edge;
  AuxVector<EdgeId> from_root_edge;
  AuxVector<int> dist_to_root;
  AuxVector<int> dist_from_root;
};

SpTreePair sp_tree_pair(const WeightedDigraph& g, Vertex root = 0,
                        AuxMeter* meter = nullptr);

// Edges of the tree walk u -> root -> v.
std::vector<EdgeId> tree_walk(const WeightedDigraph& g, const SpTreePair& t,
                              Vertex from, Vertex to);

struct InducedSubgraph {
  WeightedDigraph graph;
  std::vector<Vertex> to_parent_vertex;
  std::vector<EdgeId> to_parent_edge;
};

InducedSubgraph induced_subgraph(const WeightedDigraph& g,
                                 const std::vector<Vertex>& vertices);

}  // namespace mmc
