#include "mmc/solver_bal.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "mmc/errors.hpp"
#include "mmc/graph_algorithms.hpp"
#include "mmc/rounding.hpp"

namespace mmc {
namespace {

struct FlowStats {
  double imbalance = 0.0;
  double cost = 0.0;
};

// Imbalance and cost of an implicitly given flow, in oracle order, using n
// auxiliary entries.
FlowStats implicit_flow_stats(const WeightedDigraph& g, const ImplicitBalancedFlow& entry,
                              AuxMeter* meter) {
  auto nf = make_aux_vector<double>(meter, static_cast<std::size_t>(g.num_vertices()), 0.0);
  FlowStats s;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    for (EdgeId e : g.out_edges(v)) {
      const double val = entry(e);
      nf[g.head(e)] += val;
      nf[v] -= val;
      s.cost += val * g.weight(e);
    }
  }
  s.imbalance = imbalance(std::span<const double>(nf.data(), nf.size()));
  return s;
}

constexpr int kMaxTightenings = 6;

}  // namespace

double default_eta(int num_edges, double eps, double constant) {
  return constant * std::log(static_cast<double>(std::max(num_edges, 2))) / eps;
}

SolveReport ammc_bal(const WeightedDigraph& g, const BalSolverConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  if (g.num_edges() == 0) throw NoCycle("graph has no edges");
  if (!(cfg.eps > 0.0)) throw PreconditionViolation("eps must be positive");

  const bool oracle = cfg.memory_mode == MemoryMode::kOracle;
  AuxMeter meter;
  AuxMeter* mp = oracle ? &meter : nullptr;
  SolveReport rep;
  auto stamp = [&] {
    rep.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - started)
                      .count();
    rep.aux_peak = meter.peak();
  };

  rep.d_tilde = adiam(g, 0, mp).d_tilde;
  const int d = std::max(rep.d_tilde, 1);
  const double w = g.w_max();
  if (cfg.eps > 2.0 * w) {
    // Every cycle mean lies in [-w_max, w_max], so any cycle is eps-optimal.
    rep.cycle = find_any_cycle(g);
    rep.mean = rep.cycle->mean;
    rep.lower_bound = -w;
    rep.diagnostic = "eps exceeds 2 w_max; returned the first cycle found";
    stamp();
    return rep;
  }

  rep.eta = cfg.eta_override.value_or(default_eta(g.num_edges(), cfg.eps, cfg.eta_constant));
  const double delta = cfg.eps / (16.0 * w * d);
  const double log_drop = std::log(quantum_alpha(cfg.eps, g.num_edges(), d, w));

  OsborneOptions opts;
  opts.work_cap = cfg.work_cap;
  opts.meter = mp;
  opts.observer = cfg.observer;
  BalanceResult bal = random_osborne(BalanceProblem(g, rep.eta, delta), cfg.seed, opts);
  rep.steps = bal.steps;
  rep.passes = bal.passes;

  // Dropping tiny entries can push imb(P) slightly above delta; rebalance from
  // the current potential to a tighter target when that happens.
  const BalanceProblem prob(g, rep.eta, delta);
  double target = delta;
  FlowStats stats;
  for (int attempt = 0;; ++attempt) {
    const ImplicitBalancedFlow entry(bal.x, prob, log_drop);
    stats = implicit_flow_stats(g, entry, mp);
    rep.lower_bound = -entry.log_total() / rep.eta;
    if (stats.imbalance <= delta || !bal.converged || attempt == kMaxTightenings) break;
    target /= 4.0;
    opts.warm_start = std::span<const double>(bal.x.data(), bal.x.size());
    BalanceResult next = random_osborne(BalanceProblem(g, rep.eta, target),
                                        cfg.seed + static_cast<std::uint64_t>(attempt) + 1, opts);
    opts.warm_start = {};
    rep.steps += next.steps;
    rep.passes += next.passes;
    bal = std::move(next);
  }
  rep.imbalance = stats.imbalance;
  rep.lp_cost = stats.cost;
  rep.status = bal.converged ? SolveStatus::kOk : SolveStatus::kIterationCap;
  if (!bal.diagnostic.empty()) rep.diagnostic = bal.diagnostic;

  try {
    const ImplicitBalancedFlow entry(bal.x, prob, log_drop);
    PipelineResult rounded;
    if (oracle) {
      rounded = round_pipeline_oracle(g, std::cref(entry), cfg.eps, d, mp);
    } else {
      std::vector<double> p(static_cast<std::size_t>(g.num_edges()));
      for (EdgeId e = 0; e < g.num_edges(); ++e) p[e] = entry(e);
      rounded = round_pipeline(g, EdgeFlow(std::move(p)), cfg.eps, d);
    }
    rep.cycle = rounded.extraction.cycle;
    rep.mean = rep.cycle->mean;
  } catch (const PreconditionViolation& e) {
    if (rep.status == SolveStatus::kOk) throw;
    rep.diagnostic += "; rounding skipped: ";
    rep.diagnostic += e.what();
  }
  stamp();
  return rep;
}

GlobalSolveReport solve_all_components(const WeightedDigraph& g, const BalSolverConfig& cfg) {
  return solve_all_components(g, [&](const WeightedDigraph& sub) { return ammc_bal(sub, cfg); });
}

}  // namespace mmc
