#include "mmc/solve_report.hpp"

#include <algorithm>

#include "mmc/errors.hpp"
#include "mmc/graph_algorithms.hpp"

namespace mmc {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOk:
      return "ok";
    case SolveStatus::kIterationCap:
      return "iteration-cap";
    case SolveStatus::kNoCycle:
      return "no-cycle";
  }
  return "unknown";
}

Cycle find_any_cycle(const WeightedDigraph& g, Vertex start) {
  std::vector<int> pos(static_cast<std::size_t>(g.num_vertices()), -1);
  std::vector<EdgeId> walk;
  Vertex u = start;
  while (pos[u] < 0) {
    if (g.out_degree(u) == 0) throw NoCycle("walk reached a vertex without out-edges");
    pos[u] = static_cast<int>(walk.size());
    const EdgeId e = g.out_edges(u).front();
    walk.push_back(e);
    u = g.head(e);
  }
  return Cycle::from_edges(g, std::vector<EdgeId>(walk.begin() + pos[u], walk.end()));
}

GlobalSolveReport solve_all_components(const WeightedDigraph& g, const ComponentSolver& solve) {
  GlobalSolveReport out;
  for (auto& comp : scc_decompose(g)) {
    InducedSubgraph sub = induced_subgraph(g, comp);
    if (sub.graph.num_edges() == 0) continue;
    ComponentReport cr{std::move(comp), solve(sub.graph)};
    if (cr.report.cycle) {
      std::vector<EdgeId> edges;
      edges.reserve(cr.report.cycle->length());
      for (EdgeId e : cr.report.cycle->edges) edges.push_back(sub.to_parent_edge[e]);
      cr.report.cycle = Cycle::from_edges(g, std::move(edges));
      cr.report.mean = cr.report.cycle->mean;
      if (!out.best || cr.report.cycle->mean < out.best->mean) {
        out.best = cr.report.cycle;
        out.best_component = static_cast<int>(out.components.size());
      }
    }
    out.components.push_back(std::move(cr));
  }
  return out;
}

}  // namespace mmc
