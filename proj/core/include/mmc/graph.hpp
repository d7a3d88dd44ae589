#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mmc {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;

struct Edge {
  Vertex tail = 0;
  Vertex head = 0;
  double weight = 0.0;
};

// Immutable sparse digraph. Edge ids are the positions in the input edge list;
// the per-vertex adjacency lists (out sorted by head, in sorted by tail) define
// the fixed "oracle order" every algorithm iterates in.
class WeightedDigraph {
 public:
  WeightedDigraph() = default;
  // Throws InvalidGraph on out-of-range endpoints, duplicate (u,v) pairs or
  // non-finite weights.
  WeightedDigraph(int num_vertices, std::vector<Edge> edges);

  int num_vertices() const noexcept { return n_; }
  int num_edges() const noexcept { return static_cast<int>(edges_.size()); }

  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  double weight(EdgeId e) const { return edge(e).weight; }
  Vertex tail(EdgeId e) const { return edge(e).tail; }
  Vertex head(EdgeId e) const { return edge(e).head; }

  std::span<const EdgeId> out_edges(Vertex v) const;
  std::span<const EdgeId> in_edges(Vertex v) const;
  int out_degree(Vertex v) const;
  int in_degree(Vertex v) const;

  double w_max() const noexcept { return w_max_; }
  double w_min() const noexcept { return w_min_; }

  std::optional<EdgeId> find_edge(Vertex u, Vertex v) const;

  // Recounts in-adjacency from out-adjacency; true iff they are transposes.
  bool adjacency_consistent() const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> out_offset_, in_offset_;
  std::vector<EdgeId> out_list_, in_list_;
  double w_max_ = 0.0;
  double w_min_ = 0.0;
};

struct OracleEdge {
  EdgeId id;
  Vertex tail;
  Vertex head;
};

// Query-only view of a graph: the k-th in/out edge of a vertex and the weight
// of an ordered pair. Nothing here allocates.
class GraphOracles {
 public:
  explicit GraphOracles(const WeightedDigraph& g) : g_(&g) {}

  int num_vertices() const noexcept { return g_->num_vertices(); }
  int num_edges() const noexcept { return g_->num_edges(); }
  double w_max() const noexcept { return g_->w_max(); }

  std::optional<OracleEdge> out_edge(Vertex v, int k) const;
  std::optional<OracleEdge> in_edge(Vertex v, int k) const;

  // nullopt is the "absent" answer for non-edges.
  std::optional<double> weight(Vertex u, Vertex v) const;

 private:
  const WeightedDigraph* g_;
};

// Edge-list text format: "n m" then m lines "u v w".
WeightedDigraph read_edge_list(std::istream& in);
WeightedDigraph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const WeightedDigraph& g);

}  // namespace mmc
