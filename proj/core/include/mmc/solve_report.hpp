#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mmc/flow.hpp"
#include "mmc/graph.hpp"

namespace mmc {

enum class SolveStatus {
  kOk,
  kIterationCap,  // optimizer stopped at its budget; cycle may still be present
  kNoCycle,
};

const char* to_string(SolveStatus s);

struct SolveReport {
  std::optional<Cycle> cycle;
  double mean = 0.0;
  double imbalance = 0.0;    // imbalance of the fractional solution before rounding
  double lp_cost = 0.0;      // <P, W> of that solution
  double lower_bound = 0.0;  // certified lower bound on the optimum
  std::int64_t steps = 0;    // Osborne steps or dual-extrapolation iterations
  double passes = 0.0;
  double wall_ms = 0.0;
  std::vector<double> gap_history;
  std::size_t aux_peak = 0;  // entries, oracle memory mode only
  int d_tilde = 0;
  double eta = 0.0;
  SolveStatus status = SolveStatus::kOk;
  std::string diagnostic;
};

// Follows first out-edges from vertex 0 until a vertex repeats. Throws NoCycle
// when a vertex without out-edges is reached.
Cycle find_any_cycle(const WeightedDigraph& g, Vertex start = 0);

struct ComponentReport {
  std::vector<Vertex> vertices;  // ids in the input graph
  SolveReport report;            // cycle edge ids refer to the input graph
};

struct GlobalSolveReport {
  std::vector<ComponentReport> components;
  std::optional<Cycle> best;  // nullopt for an acyclic graph
  int best_component = -1;
};

using ComponentSolver = std::function<SolveReport(const WeightedDigraph&)>;

// Solves every strongly connected component that contains an edge and keeps
// the best cycle. Components are solved in topological order.
GlobalSolveReport solve_all_components(const WeightedDigraph& g, const ComponentSolver& solve);

}  // namespace mmc
