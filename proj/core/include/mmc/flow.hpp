#pragma once

#include <span>
#include <vector>

#include "mmc/graph.hpp"

namespace mmc {

// Nonnegative edge-aligned mass vector.
class EdgeFlow {
 public:
  EdgeFlow() = default;
  explicit EdgeFlow(std::size_t num_edges) : values_(num_edges, 0.0) {}
  // Throws PreconditionViolation on negative or non-finite entries.
  explicit EdgeFlow(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](EdgeId e) const { return values_[static_cast<std::size_t>(e)]; }
  std::span<const double> values() const noexcept { return values_; }
  double total() const noexcept { return total_; }

  bool in_simplex(double tol = 1e-9) const;

  // Scales so the total is one. Throws on a zero flow.
  EdgeFlow normalized() const;

 private:
  std::vector<double> values_;
  double total_ = 0.0;
};

// Simple directed cycle stored as edges; vertices[k] is the tail of edges[k].
struct Cycle {
  std::vector<EdgeId> edges;
  std::vector<Vertex> vertices;
  double mean = 0.0;

  std::size_t length() const noexcept { return edges.size(); }

  // Validates chaining and vertex distinctness; computes the mean.
  static Cycle from_edges(const WeightedDigraph& g, std::vector<EdgeId> edges);
};

using NetflowVector = std::vector<double>;

// Per-vertex inflow minus outflow.
NetflowVector netflow(const WeightedDigraph& g, std::span<const double> flow);
inline NetflowVector netflow(const WeightedDigraph& g, const EdgeFlow& f) {
  return netflow(g, f.values());
}

double imbalance(std::span<const double> netflow);
inline double imbalance(const WeightedDigraph& g, const EdgeFlow& f) {
  return imbalance(netflow(g, f));
}

double lp_cost(const WeightedDigraph& g, std::span<const double> flow);
inline double lp_cost(const WeightedDigraph& g, const EdgeFlow& f) {
  return lp_cost(g, f.values());
}

double l1_distance(std::span<const double> a, std::span<const double> b);

// Shannon entropy with 0 log 0 = 0.
double entropy(std::span<const double> p);

// -(1/eta) log sum exp(-eta a_i); +inf entries are ignored.
double softmin(std::span<const double> a, double eta);

// log sum exp(a_i), max-shifted; -inf for an empty or all -inf input.
double log_sum_exp(std::span<const double> a);

// Uniform unit mass on the edges of a cycle.
EdgeFlow cycle_flow(const WeightedDigraph& g, const Cycle& c);

}  // namespace mmc
