#include "mmc/graph_algorithms.hpp"

#include <algorithm>
#include <deque>

#include "mmc/errors.hpp"

namespace mmc {

std::vector<std::vector<Vertex>> scc_decompose(const WeightedDigraph& g) {
  const int n = g.num_vertices();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<Vertex> stack;
  // Explicit DFS frames: (vertex, next out-edge position).
  std::vector<std::pair<Vertex, int>> frames;
  std::vector<std::vector<Vertex>> components;
  int counter = 0;

  for (Vertex s = 0; s < n; ++s) {
    if (index[s] != -1) continue;
    frames.emplace_back(s, 0);
    index[s] = low[s] = counter++;
    stack.push_back(s);
    on_stack[s] = 1;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      auto out = g.out_edges(v);
      if (pos < static_cast<int>(out.size())) {
        const Vertex w = g.head(out[static_cast<std::size_t>(pos++)]);
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const Vertex done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const Vertex parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        std::vector<Vertex> comp;
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != done);
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
      }
    }
  }
  // Tarjan finishes sink components first.
  std::reverse(components.begin(), components.end());
  return components;
}

bool is_strongly_connected(const WeightedDigraph& g) {
  if (g.num_vertices() <= 1) return true;
  auto fwd = bfs_distances(g, 0, Direction::kForward);
  auto bwd = bfs_distances(g, 0, Direction::kBackward);
  return std::none_of(fwd.begin(), fwd.end(), [](int d) { return d == kUnreachable; }) &&
         std::none_of(bwd.begin(), bwd.end(), [](int d) { return d == kUnreachable; });
}

namespace {

// BFS that also records the edge through which each vertex was discovered.
template <class Dist, class Parent>
void bfs_tree(const WeightedDigraph& g, Vertex root, Direction dir, Dist& dist,
              Parent& parent_edge, AuxVector<Vertex>& queue) {
  std::fill(dist.begin(), dist.end(), kUnreachable);
  std::fill(parent_edge.begin(), parent_edge.end(), kNoEdge);
  queue.clear();
  dist[root] = 0;
  queue.push_back(root);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const Vertex u = queue[qi];
    auto adj = dir == Direction::kForward ? g.out_edges(u) : g.in_edges(u);
    for (EdgeId e : adj) {
      const Vertex w = dir == Direction::kForward ? g.head(e) : g.tail(e);
      if (dist[w] != kUnreachable) continue;
      dist[w] = dist[u] + 1;
      parent_edge[w] = e;
      queue.push_back(w);
    }
  }
}

void check_root(const WeightedDigraph& g, Vertex root) {
  if (root < 0 || root >= g.num_vertices()) {
    throw PreconditionViolation("root vertex out of range");
  }
}

}  // namespace

std::vector<int> bfs_distances(const WeightedDigraph& g, Vertex root, Direction dir) {
  check_root(g, root);
  std::vector<int> dist(g.num_vertices());
  std::vector<EdgeId> parent(g.num_vertices());
  AuxVector<Vertex> queue;
  queue.reserve(g.num_vertices());
  bfs_tree(g, root, dir, dist, parent, queue);
  return dist;
}

DiameterEstimate adiam(const WeightedDigraph& g, Vertex root, AuxMeter* meter) {
  check_root(g, root);
  const auto n = static_cast<std::size_t>(g.num_vertices());
  auto to = make_aux_vector<int>(meter, n, kUnreachable);
  auto from = make_aux_vector<int>(meter, n, kUnreachable);
  auto parent = make_aux_vector<EdgeId>(meter, n, kNoEdge);
  AuxVector<Vertex> queue{MeteredAllocator<Vertex>(meter)};
  queue.reserve(n);
  bfs_tree(g, root, Direction::kBackward, to, parent, queue);
  bfs_tree(g, root, Direction::kForward, from, parent, queue);
  DiameterEstimate est;
  for (std::size_t v = 0; v < n; ++v) {
    if (to[v] == kUnreachable || from[v] == kUnreachable) {
      throw NotStronglyConnected("vertex " + std::to_string(v) +
                                 " is not mutually reachable with vertex " +
                                 std::to_string(root));
    }
    est.max_to_root = std::max(est.max_to_root, to[v]);
    est.max_from_root = std::max(est.max_from_root, from[v]);
  }
  est.d_tilde = est.max_to_root + est.max_from_root;
  return est;
}

int exact_diameter(const WeightedDigraph& g) {
  int d = 0;
  for (Vertex s = 0; s < g.num_vertices(); ++s) {
    for (int x : bfs_distances(g, s)) {
      if (x == kUnreachable) throw NotStronglyConnected("graph is not strongly connected");
      d = std::max(d, x);
    }
  }
  return d;
}

SpTreePair sp_tree_pair(const WeightedDigraph& g, Vertex root, AuxMeter* meter) {
  check_root(g, root);
  const auto n = static_cast<std::size_t>(g.num_vertices());
  SpTreePair t{root,
               make_aux_vector<EdgeId>(meter, n, kNoEdge),
               make_aux_vector<EdgeId>(meter, n, kNoEdge),
               make_aux_vector<int>(meter, n, kUnreachable),
               make_aux_vector<int>(meter, n, kUnreachable)};
  AuxVector<Vertex> queue{MeteredAllocator<Vertex>(meter)};
  queue.reserve(n);
  bfs_tree(g, root, Direction::kBackward, t.dist_to_root, t.to_root_edge, queue);
  bfs_tree(g, root, Direction::kForward, t.dist_from_root, t.from_root_edge, queue);
  for (std::size_t v = 0; v < n; ++v) {
    if (t.dist_to_root[v] == kUnreachable || t.dist_from_root[v] == kUnreachable) {
      throw NotStronglyConnected("vertex " + std::to_string(v) +
                                 " is not mutually reachable with the root");
    }
  }
  return t;
}

std::vector<EdgeId> tree_walk(const WeightedDigraph& g, const SpTreePair& t,
                              Vertex from, Vertex to) {
  std::vector<EdgeId> walk;
  for (Vertex u = from; u != t.root; u = g.head(t.to_root_edge[u])) {
    walk.push_back(t.to_root_edge[u]);
  }
  std::vector<EdgeId> tail_part;
  for (Vertex u = to; u != t.root; u = g.tail(t.from_root_edge[u])) {
    tail_part.push_back(t.from_root_edge[u]);
  }
  walk.insert(walk.end(), tail_part.rbegin(), tail_part.rend());
  return walk;
}

InducedSubgraph induced_subgraph(const WeightedDigraph& g,
                                 const std::vector<Vertex>& vertices) {
  std::vector<int> local(g.num_vertices(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    local[vertices[i]] = static_cast<int>(i);
  }
  InducedSubgraph sub;
  sub.to_parent_vertex = vertices;
  std::vector<Edge> edges;
  for (Vertex v : vertices) {
    for (EdgeId e : g.out_edges(v)) {
      const Vertex h = g.head(e);
      if (local[h] < 0) continue;
      edges.push_back({local[v], local[h], g.weight(e)});
      sub.to_parent_edge.push_back(e);
    }
  }
  sub.graph = WeightedDigraph(static_cast<int>(vertices.size()), std::move(edges));
  return sub;
}

}  // namespace mmc
