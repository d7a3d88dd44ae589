#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mmc/aux_memory.hpp"
#include "mmc/flow.hpp"
#include "mmc/graph.hpp"

namespace mmc {

struct RoundingOptions {
  Vertex root = 0;
  // On an existing edge (i,j), push imbalance directly instead of through the root.
  bool direct_edge_shortcut = false;
};

// Circulation carried as integer units: F_e = units[e] / total_units. Balance
// and quantization are exact in this representation.
struct QuantizedCirculation {
  std::vector<std::int64_t> units;
  std::int64_t total_units = 0;      // 1 / gamma
  std::int64_t quantized_units = 0;  // sum of floor(P / alpha), 1 / beta
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  double entry(EdgeId e) const {
    return static_cast<double>(units[static_cast<std::size_t>(e)]) /
           static_cast<double>(total_units);
  }
  EdgeFlow flow() const;
};

// Push imbalance through shortest-path trees into and out of the root, then
// normalize. The output is a circulation with ||F - p||_1 <= 2 d imb(p).
EdgeFlow round_circ(const WeightedDigraph& g, const EdgeFlow& p,
                    const RoundingOptions& options = {});

// eps / (40 m d_tilde w_max).
double quantum_alpha(double eps, int num_edges, int d_tilde, double w_max);

// Floor to multiples of alpha, renormalize, then round to a circulation.
// Rejects imb(p) > 2 / d_tilde (the d_tilde form of imb(p) <= 1/d) and eps
// outside (0, 2 w_max].
QuantizedCirculation round_qcirc(const WeightedDigraph& g, const EdgeFlow& p, double eps,
                                 int d_tilde, const RoundingOptions& options = {});
QuantizedCirculation round_qcirc(const WeightedDigraph& g, const EdgeFlow& p, double eps,
                                 const RoundingOptions& options = {});

struct CycleExtraction {
  Cycle cycle;
  double target = 0.0;  // <W, F>
  std::int64_t cancelled_edge_visits = 0;
  std::int64_t cycles_cancelled = 0;
  bool early_exit = false;
};

// Quantized cycle cancelling with a resumable DFS. Returns the first cycle
// whose mean is at most <W, F>.
CycleExtraction round_cycle(const WeightedDigraph& g, const QuantizedCirculation& qc,
                            AuxMeter* meter = nullptr);

struct PipelineResult {
  CycleExtraction extraction;
  std::int64_t total_units = 0;
  std::int64_t quantized_units = 0;
  double alpha = 0.0;
  std::size_t ledger_entries = 0;
};

PipelineResult round_pipeline(const WeightedDigraph& g, const EdgeFlow& p, double eps,
                              int d_tilde, const RoundingOptions& options = {});
Cycle round_pipeline(const WeightedDigraph& g, const EdgeFlow& p, double eps);

// Same computation as round_pipeline, but P is read one entry at a time and
// the only per-edge state is a map of flow added on the two BFS trees. All
// auxiliary storage is charged to the meter.
PipelineResult round_pipeline_oracle(const WeightedDigraph& g,
                                     const std::function<double(EdgeId)>& p_entry,
                                     double eps, int d_tilde, AuxMeter* meter,
                                     const RoundingOptions& options = {});

}  // namespace mmc
