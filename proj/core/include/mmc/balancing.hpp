#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>

#include "mmc/aux_memory.hpp"
#include "mmc/flow.hpp"
#include "mmc/graph.hpp"

namespace mmc {

// Balancing of the implicit matrix K = exp(-eta W) supported on the edges.
// K is never stored; entries are read as log K_e = -eta * w_e.
class BalanceProblem {
 public:
  BalanceProblem(const WeightedDigraph& g, double eta, double delta);
  BalanceProblem(WeightedDigraph&&, double, double) = delete;  // keeps a reference

  const WeightedDigraph& graph() const noexcept { return *g_; }
  double eta() const noexcept { return eta_; }
  double delta() const noexcept { return delta_; }
  double log_k(EdgeId e) const { return -eta_ * g_->weight(e); }

  // log of (max K entry / min K entry).
  double log_kappa() const;
  // log m + 2 eta w_max, which always dominates log_kappa().
  double log_kappa_bound() const;

 private:
  const WeightedDigraph* g_;
  double eta_;
  double delta_;
};

// log of A_e for A = diag(e^x) K diag(e^-x).
inline double log_scaled_entry(std::span<const double> x, const BalanceProblem& prob,
                               EdgeId e) {
  const Edge& ed = prob.graph().edge(e);
  return x[ed.tail] - x[ed.head] + prob.log_k(e);
}

// Row and column sums of A at vertex i, excluding the self-loop (which cancels
// in the imbalance). -inf when the vertex has no such edge.
double log_row_sum(std::span<const double> x, const BalanceProblem& prob, Vertex i);
double log_col_sum(std::span<const double> x, const BalanceProblem& prob, Vertex i);

// log of sum_e A_e, including self-loops.
double log_total_mass(std::span<const double> x, const BalanceProblem& prob);

// ||r(A) - c(A)||_1 / sum(A), recomputed from scratch in O(m).
double relative_imbalance(std::span<const double> x, const BalanceProblem& prob);

// Geometric-mean update equalizing row and column sums at i. Returns the
// change applied to x[i]. Throws NotStronglyConnected when i lacks an in- or
// out-edge to another vertex.
double osborne_step(std::span<double> x, Vertex i, const BalanceProblem& prob);

struct OsborneProgress {
  std::int64_t steps = 0;
  double passes = 0.0;
  double imbalance = 0.0;  // estimate from cached sums
  std::span<const double> x;
};

struct OsborneOptions {
  // Budget in edge visits; default is 100x the expected-work bound.
  std::optional<double> work_cap;
  AuxMeter* meter = nullptr;
  std::span<const double> warm_start;
  std::function<void(const OsborneProgress&)> observer;
};

struct BalanceResult {
  AuxVector<double> x;
  double imbalance = 0.0;
  bool converged = false;
  std::int64_t steps = 0;
  double work = 0.0;    // edge visits
  double passes = 0.0;  // work / m
  double log_total = 0.0;
  std::string diagnostic;
};

double default_osborne_work_cap(const BalanceProblem& prob);

// Random Osborne: uniformly random coordinate per step, log-domain cached
// row/column sums, full check every n steps.
BalanceResult random_osborne(const BalanceProblem& prob, std::uint64_t seed,
                             const OsborneOptions& options = {});

// Stable evaluation of P = A / sum(A) one entry at a time. Exponents are
// shifted by their maximum; entries whose shifted exponent is below
// log_drop_threshold are zeroed and excluded from the normalizer.
class ImplicitBalancedFlow {
 public:
  ImplicitBalancedFlow(std::span<const double> x, const BalanceProblem& prob,
                       double log_drop_threshold = -std::numeric_limits<double>::infinity());

  double operator()(EdgeId e) const {
    const double shifted = log_scaled_entry(x_, *prob_, e) - shift_;
    if (shifted < log_drop_) return 0.0;
    return std::exp(shifted) / normalizer_;
  }

  // log sum(A) without any dropping.
  double log_total() const noexcept { return log_total_; }
  std::size_t dropped() const noexcept { return dropped_; }

 private:
  std::span<const double> x_;
  const BalanceProblem* prob_;
  double log_drop_;
  double shift_ = 0.0;
  double normalizer_ = 1.0;
  double log_total_ = 0.0;
  std::size_t dropped_ = 0;
};

struct BalancedFlow {
  EdgeFlow p;
  double imbalance = 0.0;  // imb(P) of the returned flow
  double log_total = 0.0;  // log sum(A), before dropping
  std::size_t dropped = 0;
};

BalancedFlow build_balanced_flow(
    std::span<const double> x, const BalanceProblem& prob,
    double log_drop_threshold = -std::numeric_limits<double>::infinity());

}  // namespace mmc
