#include "mmc/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mmc/errors.hpp"

namespace mmc {

EdgeFlow::EdgeFlow(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw PreconditionViolation("flow entries must be finite and nonnegative");
    }
    total_ += v;
  }
}

bool EdgeFlow::in_simplex(double tol) const { return std::abs(total_ - 1.0) <= tol; }

EdgeFlow EdgeFlow::normalized() const {
  if (total_ <= 0.0) throw PreconditionViolation("cannot normalize a zero flow");
  std::vector<double> v(values_);
  for (double& x : v) x /= total_;
  return EdgeFlow(std::move(v));
}

Cycle Cycle::from_edges(const WeightedDigraph& g, std::vector<EdgeId> edges) {
  if (edges.empty()) throw PreconditionViolation("a cycle needs at least one edge");
  Cycle c;
  c.vertices.reserve(edges.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const EdgeId e = edges[k];
    if (e < 0 || e >= g.num_edges()) throw PreconditionViolation("cycle edge id out of range");
    const EdgeId next = edges[(k + 1) % edges.size()];
    if (g.head(e) != g.tail(next)) {
      throw PreconditionViolation("cycle edges do not chain head to tail");
    }
    c.vertices.push_back(g.tail(e));
    sum += g.weight(e);
  }
  std::vector<Vertex> sorted(c.vertices);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw PreconditionViolation("cycle repeats a vertex");
  }
  c.mean = sum / static_cast<double>(edges.size());
  c.edges = std::move(edges);
  return c;
}

NetflowVector netflow(const WeightedDigraph& g, std::span<const double> flow) {
  if (flow.size() != static_cast<std::size_t>(g.num_edges())) {
    throw PreconditionViolation("flow length does not match edge count");
  }
  NetflowVector nf(static_cast<std::size_t>(g.num_vertices()), 0.0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (ed.tail == ed.head) continue;
    nf[ed.head] += flow[e];
    nf[ed.tail] -= flow[e];
  }
  return nf;
}

double imbalance(std::span<const double> nf) {
  double s = 0.0;
  for (double v : nf) s += std::abs(v);
  return s;
}

double lp_cost(const WeightedDigraph& g, std::span<const double> flow) {
  if (flow.size() != static_cast<std::size_t>(g.num_edges())) {
    throw PreconditionViolation("flow length does not match edge count");
  }
  double s = 0.0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) s += flow[e] * g.weight(e);
  return s;
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw PreconditionViolation("length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

double entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (v < 0.0) throw PreconditionViolation("entropy of a negative entry");
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

double log_sum_exp(std::span<const double> a) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double v : a) mx = std::max(mx, v);
  if (!std::isfinite(mx)) return mx;
  double s = 0.0;
  for (double v : a) s += std::exp(v - mx);
  return mx + std::log(s);
}

double softmin(std::span<const double> a, double eta) {
  if (!(eta > 0.0)) throw PreconditionViolation("softmin needs eta > 0");
  std::vector<double> scaled;
  scaled.reserve(a.size());
  for (double v : a) {
    if (std::isnan(v)) throw PreconditionViolation("softmin of NaN");
    if (v == std::numeric_limits<double>::infinity()) continue;
    scaled.push_back(-eta * v);
  }
  if (scaled.empty()) throw PreconditionViolation("softmin needs a finite entry");
  return -log_sum_exp(scaled) / eta;
}

EdgeFlow cycle_flow(const WeightedDigraph& g, const Cycle& c) {
  std::vector<double> v(static_cast<std::size_t>(g.num_edges()), 0.0);
  const double share = 1.0 / static_cast<double>(c.length());
  for (EdgeId e : c.edges) v[e] += share;
  return EdgeFlow(std::move(v));
}

}  // namespace mmc
