#include "mmc/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

#include "mmc/balancing.hpp"
#include "mmc/errors.hpp"
#include "mmc/graph_algorithms.hpp"
#include "mmc/solver_bal.hpp"

namespace mmc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Splits a closed-or-open walk (as consecutive edges) into the simple cycles it
// contains and returns the one with the smallest mean.
std::optional<Cycle> best_cycle_in_walk(const WeightedDigraph& g,
                                        const std::vector<EdgeId>& walk) {
  std::vector<int> pos(static_cast<std::size_t>(g.num_vertices()), -1);
  std::vector<EdgeId> stack;
  std::vector<Vertex> verts;
  std::optional<Cycle> best;
  for (EdgeId e : walk) {
    const Vertex t = g.tail(e);
    if (pos[t] < 0) {
      pos[t] = static_cast<int>(verts.size());
      verts.push_back(t);
    }
    stack.push_back(e);
    const Vertex h = g.head(e);
    if (pos[h] >= 0) {
      const auto start = static_cast<std::size_t>(pos[h]);
      Cycle c = Cycle::from_edges(g, std::vector<EdgeId>(stack.begin() + start, stack.end()));
      if (!best || c.mean < best->mean) best = std::move(c);
      for (std::size_t k = start + 1; k < verts.size(); ++k) pos[verts[k]] = -1;
      verts.resize(start + 1);
      stack.resize(start);
    }
  }
  return best;
}

std::int64_t integer_weight(const WeightedDigraph& g, EdgeId e) {
  const double w = g.weight(e);
  if (w != std::round(w) || std::abs(w) > 9.0e15) {
    throw PreconditionViolation("tree correction requires integer weights");
  }
  return static_cast<std::int64_t>(w);
}

}  // namespace

MmcResult karp_mmc(const WeightedDigraph& g) {
  const int n = g.num_vertices();
  if (n == 0 || g.num_edges() == 0) throw NoCycle("graph has no edges");
  const auto un = static_cast<std::size_t>(n);
  // dist[k][v]: minimum weight of a walk with exactly k edges ending at v.
  std::vector<std::vector<double>> dist(un + 1, std::vector<double>(un, kInf));
  std::vector<std::vector<EdgeId>> pred(un + 1, std::vector<EdgeId>(un, kNoEdge));
  std::fill(dist[0].begin(), dist[0].end(), 0.0);
  for (std::size_t k = 1; k <= un; ++k) {
    for (Vertex v = 0; v < n; ++v) {
      for (EdgeId e : g.in_edges(v)) {
        const double cand = dist[k - 1][g.tail(e)] + g.weight(e);
        if (cand < dist[k][v]) {
          dist[k][v] = cand;
          pred[k][v] = e;
        }
      }
    }
  }
  double mu = kInf;
  Vertex arg = -1;
  for (Vertex v = 0; v < n; ++v) {
    if (dist[un][v] == kInf) continue;
    double worst = -kInf;
    for (std::size_t k = 0; k < un; ++k) {
      if (dist[k][v] == kInf) continue;
      worst = std::max(worst, (dist[un][v] - dist[k][v]) / static_cast<double>(un - k));
    }
    if (worst < mu) {
      mu = worst;
      arg = v;
    }
  }
  if (arg < 0) throw NoCycle("graph is acyclic");

  std::vector<EdgeId> walk(un);
  Vertex v = arg;
  for (std::size_t k = un; k >= 1; --k) {
    walk[k - 1] = pred[k][v];
    v = g.tail(pred[k][v]);
  }
  auto cycle = best_cycle_in_walk(g, walk);
  if (!cycle) throw std::logic_error("Karp walk of n edges contained no cycle");
  return {mu, std::move(*cycle)};
}

void for_each_simple_cycle(const WeightedDigraph& g,
                           const std::function<void(const Cycle&)>& visit) {
  const int n = g.num_vertices();
  if (n > kMaxEnumerationVertices) {
    throw PreconditionViolation("cycle enumeration is limited to " +
                                std::to_string(kMaxEnumerationVertices) + " vertices");
  }
  std::vector<char> on_path(static_cast<std::size_t>(n), 0);
  std::vector<EdgeId> path;
  // Cycles are reported from their smallest vertex s, visiting only vertices > s.
  std::function<void(Vertex, Vertex)> extend = [&](Vertex s, Vertex u) {
    for (EdgeId e : g.out_edges(u)) {
      const Vertex h = g.head(e);
      if (h == s) {
        path.push_back(e);
        visit(Cycle::from_edges(g, path));
        path.pop_back();
      } else if (h > s && !on_path[h]) {
        on_path[h] = 1;
        path.push_back(e);
        extend(s, h);
        path.pop_back();
        on_path[h] = 0;
      }
    }
  };
  for (Vertex s = 0; s < n; ++s) {
    on_path[s] = 1;
    extend(s, s);
    on_path[s] = 0;
  }
}

MmcResult enumerate_cycles_mmc(const WeightedDigraph& g) {
  std::optional<Cycle> best;
  for_each_simple_cycle(g, [&](const Cycle& c) {
    if (!best || c.mean < best->mean) best = c;
  });
  if (!best) throw NoCycle("graph is acyclic");
  return {best->mean, std::move(*best)};
}

std::optional<ShortestPaths> bellman_ford(const WeightedDigraph& g, Vertex source) {
  const auto un = static_cast<std::size_t>(g.num_vertices());
  ShortestPaths sp{std::vector<double>(un, kInf), std::vector<EdgeId>(un, kNoEdge)};
  sp.dist[source] = 0.0;
  for (std::size_t round = 0; round + 1 < un; ++round) {
    bool changed = false;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const Edge& ed = g.edge(e);
      if (sp.dist[ed.tail] == kInf) continue;
      if (sp.dist[ed.tail] + ed.weight < sp.dist[ed.head]) {
        sp.dist[ed.head] = sp.dist[ed.tail] + ed.weight;
        sp.parent[ed.head] = e;
        changed = true;
      }
    }
    if (!changed) break;
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (sp.dist[ed.tail] != kInf && sp.dist[ed.tail] + ed.weight < sp.dist[ed.head]) {
      return std::nullopt;
    }
  }
  return sp;
}

ShortestPaths dijkstra(const WeightedDigraph& g, Vertex source, std::span<const double> weights) {
  const auto un = static_cast<std::size_t>(g.num_vertices());
  if (!weights.empty() && weights.size() != static_cast<std::size_t>(g.num_edges())) {
    throw PreconditionViolation("weight vector length does not match edge count");
  }
  auto weight = [&](EdgeId e) { return weights.empty() ? g.weight(e) : weights[e]; };
  ShortestPaths sp{std::vector<double>(un, kInf), std::vector<EdgeId>(un, kNoEdge)};
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  sp.dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > sp.dist[u]) continue;
    for (EdgeId e : g.out_edges(u)) {
      const double w = weight(e);
      if (w < 0.0) throw PreconditionViolation("Dijkstra needs nonnegative weights");
      const Vertex h = g.head(e);
      if (d + w < sp.dist[h]) {
        sp.dist[h] = d + w;
        sp.parent[h] = e;
        heap.emplace(sp.dist[h], h);
      }
    }
  }
  return sp;
}

std::vector<std::int64_t> tree_distances(const WeightedDigraph& g, Vertex source,
                                         const std::vector<Vertex>& parent) {
  const int n = g.num_vertices();
  if (parent.size() != static_cast<std::size_t>(n)) {
    throw PreconditionViolation("parent array has wrong length");
  }
  if (parent[source] != -1) throw PreconditionViolation("source must be the tree root");
  std::vector<std::int64_t> dist(static_cast<std::size_t>(n), 0);
  // 0 = unvisited, 1 = in progress, 2 = done
  std::vector<char> state(static_cast<std::size_t>(n), 0);
  state[source] = 2;
  std::vector<Vertex> chain;
  for (Vertex v = 0; v < n; ++v) {
    Vertex u = v;
    while (state[u] == 0) {
      state[u] = 1;
      chain.push_back(u);
      const Vertex p = parent[u];
      if (p < 0 || p >= n || !g.find_edge(p, u)) {
        throw PreconditionViolation("parent of vertex " + std::to_string(u) +
                                    " is not joined to it by an edge");
      }
      u = p;
    }
    if (state[u] == 1) throw PreconditionViolation("parent pointers contain a cycle");
    while (!chain.empty()) {
      const Vertex c = chain.back();
      chain.pop_back();
      dist[c] = dist[parent[c]] + integer_weight(g, *g.find_edge(parent[c], c));
      state[c] = 2;
    }
  }
  return dist;
}

SsspTree sssp_correct(const WeightedDigraph& g, Vertex source, const std::vector<Vertex>& parent,
                      CorrectionStats* stats) {
  const int n = g.num_vertices();
  const auto un = static_cast<std::size_t>(n);
  SsspTree tree{source, parent, tree_distances(g, source, parent)};
  CorrectionStats local;
  CorrectionStats& st = stats != nullptr ? *stats : local;
  st = {};

  std::vector<std::int64_t> w(static_cast<std::size_t>(g.num_edges()));
  std::int64_t w_abs = 0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    w[e] = integer_weight(g, e);
    w_abs = std::max(w_abs, std::abs(w[e]));
  }

  // Children as doubly linked sibling lists so re-parenting is O(1).
  std::vector<Vertex> first_child(un, -1), next_sib(un, -1), prev_sib(un, -1);
  auto link = [&](Vertex child, Vertex par) {
    next_sib[child] = first_child[par];
    prev_sib[child] = -1;
    if (first_child[par] >= 0) prev_sib[first_child[par]] = child;
    first_child[par] = child;
  };
  auto unlink = [&](Vertex child) {
    const Vertex par = tree.parent[child];
    if (prev_sib[child] >= 0) {
      next_sib[prev_sib[child]] = next_sib[child];
    } else {
      first_child[par] = next_sib[child];
    }
    if (next_sib[child] >= 0) prev_sib[next_sib[child]] = prev_sib[child];
  };
  for (Vertex v = 0; v < n; ++v) {
    if (v != source) link(v, tree.parent[v]);
  }

  auto& d = tree.dist;
  std::set<std::pair<Vertex, Vertex>> relaxable;
  auto refresh = [&](EdgeId e) {
    const Edge& ed = g.edge(e);
    if (d[ed.tail] + w[e] < d[ed.head]) {
      relaxable.emplace(ed.tail, ed.head);
    } else {
      relaxable.erase({ed.tail, ed.head});
    }
  };
  for (EdgeId e = 0; e < g.num_edges(); ++e) refresh(e);

  // Every processed vertex lowers sum(d) by at least one, and sum(d) is
  // bounded below when there is no negative cycle.
  std::int64_t budget = static_cast<std::int64_t>(n) * n;
  for (std::int64_t x : d) budget += x;
  budget += static_cast<std::int64_t>(n) * (n > 0 ? n - 1 : 0) * w_abs;

  std::vector<Vertex> subtree;
  while (!relaxable.empty()) {
    const auto [i, j] = *relaxable.begin();
    relaxable.erase(relaxable.begin());
    const EdgeId e = *g.find_edge(i, j);
    const std::int64_t delta = w[e] + d[i] - d[j];
    for (Vertex a = i; a >= 0; a = tree.parent[a]) {
      if (a == j) {
        throw NegativeCycle("relaxing (" + std::to_string(i) + "," + std::to_string(j) +
                            ") closes a negative cycle");
      }
    }
    unlink(j);
    tree.parent[j] = i;
    link(j, i);

    subtree.clear();
    subtree.push_back(j);
    for (std::size_t k = 0; k < subtree.size(); ++k) {
      for (Vertex c = first_child[subtree[k]]; c >= 0; c = next_sib[c]) subtree.push_back(c);
    }
    for (Vertex u : subtree) d[u] += delta;
    for (Vertex u : subtree) {
      for (EdgeId f : g.out_edges(u)) refresh(f);
      for (EdgeId f : g.in_edges(u)) refresh(f);
    }
    st.processed_vertices += static_cast<std::int64_t>(subtree.size());
    ++st.relaxations;
    if (st.processed_vertices > budget) {
      throw NegativeCycle("distance estimates keep decreasing; negative cycle present");
    }
  }
  return tree;
}

ReductionResult reduction_demo(const WeightedDigraph& g, Vertex source, double eps,
                               std::uint64_t seed) {
  if (!(eps > 0.0)) throw PreconditionViolation("eps must be positive");
  const int n = g.num_vertices();
  const auto un = static_cast<std::size_t>(n);
  std::vector<double> potential(un, 0.0);
  if (eps <= 2.0 * g.w_max()) {
    const int d = std::max(adiam(g).d_tilde, 1);
    const double eta = default_eta(g.num_edges(), eps);
    const BalanceProblem prob(g, eta, eps / (16.0 * g.w_max() * d));
    const BalanceResult bal = random_osborne(prob, seed);
    for (std::size_t v = 0; v < un; ++v) potential[v] = -bal.x[v] / eta;
  }

  ReductionResult res;
  std::vector<double> shifted(static_cast<std::size_t>(g.num_edges()));
  res.min_reduced_weight = std::numeric_limits<double>::infinity();
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    const double reduced = ed.weight + potential[ed.tail] - potential[ed.head];
    res.min_reduced_weight = std::min(res.min_reduced_weight, reduced);
    shifted[e] = std::max(0.0, reduced + eps);
  }
  if (res.min_reduced_weight < -eps - 1e-6) {
    throw PotentialQualityError("reduced weight " + std::to_string(res.min_reduced_weight) +
                                " is below -eps");
  }

  const ShortestPaths sp = dijkstra(g, source, shifted);
  std::vector<Vertex> parent(un, -1);
  for (Vertex v = 0; v < n; ++v) {
    if (v == source) continue;
    if (sp.parent[v] == kNoEdge) {
      throw NotStronglyConnected("vertex " + std::to_string(v) + " is unreachable from the source");
    }
    parent[v] = g.tail(sp.parent[v]);
  }
  const std::vector<std::int64_t> initial = tree_distances(g, source, parent);
  res.tree = sssp_correct(g, source, parent, &res.stats);
  res.dist = res.tree.dist;
  for (std::size_t v = 0; v < un; ++v) res.initial_excess += initial[v] - res.dist[v];
  return res;
}

}  // namespace mmc
