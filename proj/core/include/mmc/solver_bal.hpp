#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "mmc/balancing.hpp"
#include "mmc/graph.hpp"
#include "mmc/solve_report.hpp"

namespace mmc {

enum class MemoryMode { kDense, kOracle };

struct BalSolverConfig {
  double eps = 0.1;
  std::optional<double> eta_override;  // default eta_constant * log(m) / eps
  std::uint64_t seed = 0;
  MemoryMode memory_mode = MemoryMode::kDense;
  double eta_constant = 2.5;
  std::optional<double> work_cap;  // Osborne budget in edge visits
  std::function<void(const OsborneProgress&)> observer;
};

double default_eta(int num_edges, double eps, double constant = 2.5);

// Entropic-regularized LP via matrix balancing, then quantized rounding.
// Requires a strongly connected graph with at least one edge.
SolveReport ammc_bal(const WeightedDigraph& g, const BalSolverConfig& cfg);

GlobalSolveReport solve_all_components(const WeightedDigraph& g, const BalSolverConfig& cfg);

}  // namespace mmc
