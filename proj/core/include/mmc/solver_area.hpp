#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mmc/flow.hpp"
#include "mmc/graph.hpp"
#include "mmc/solve_report.hpp"

namespace mmc {

// Signed incidence operator A (n x m): (Ap)_k = inflow_k - outflow_k.
// Self-loop columns are zero in both A and |A|. Every application counts as
// one pass through the graph.
class IncidenceOperator {
 public:
  explicit IncidenceOperator(const WeightedDigraph& g);
  explicit IncidenceOperator(WeightedDigraph&&) = delete;

  void apply(std::span<const double> p, std::span<double> out) const;
  void apply_abs(std::span<const double> p, std::span<double> out) const;
  // (A^T y)_e = y_head - y_tail
  void apply_transpose(std::span<const double> y, std::span<double> out) const;
  // (|A|^T y)_e = y_head + y_tail
  void apply_abs_transpose(std::span<const double> y, std::span<double> out) const;

  const WeightedDigraph& graph() const noexcept { return *g_; }
  std::int64_t applications() const noexcept { return applications_; }

 private:
  const WeightedDigraph* g_;
  std::vector<Vertex> tails_, heads_;
  bool has_self_loops_ = false;
  mutable std::int64_t applications_ = 0;
};

// Primal part on the edge simplex, dual part in [-1, 1]^n.
struct PairedVector {
  std::vector<double> x;
  std::vector<double> y;
};

struct SaddleState {
  PairedVector s;      // accumulated extrapolation steps
  PairedVector z;      // first proximal point of the current iteration
  PairedVector u;      // second proximal point
  PairedVector u_sum;  // running sum of u, for the averaged iterate
  std::int64_t t = 0;
  double c = 0.0;  // penalty scale 3 d_tilde w_max
  double eps_tilde = 0.0;

  PairedVector average() const;
};

// <px, w> + c ||A px||_1 - min_e (w + c A^T py)_e.
double duality_gap(const IncidenceOperator& op, double c, std::span<const double> px,
                   std::span<const double> py);
// Gap at the averaged iterate (or at s when no iteration has run yet).
double duality_gap(const SaddleState& state, const IncidenceOperator& op);

// min_e (w + c A^T y)_e: a lower bound on the optimum for any y in [-1,1]^n.
double penalized_dual_value(const IncidenceOperator& op, double c, std::span<const double> y);
double penalized_primal_value(const IncidenceOperator& op, double c, std::span<const double> p);

struct AproxOptions {
  double entropy_weight = 10.0;
  bool early_exit = true;
  std::span<const double> warm_start;  // initial x; uniform when empty
};

struct AproxResult {
  PairedVector point;
  int rounds = 0;
};

int aprox_round_budget(double c, double eps_prime, int n);

// Alternating minimization for the proximal step of the area-convex regularizer.
AproxResult aprox(const IncidenceOperator& op, double c, const PairedVector& v,
                  double eps_prime, const AproxOptions& options = {});

struct AreaOptions {
  double step_multiplier = 1.0;  // scales the 1/3 and 1/6 extrapolation steps
  double entropy_weight = 10.0;
  bool aprox_early_exit = true;
  std::optional<std::int64_t> max_iters;  // default: the theoretical bound
  bool record_gap_history = false;
  // Certify with the best primal point and best dual point seen among the
  // averaged and current iterates instead of the averaged pair alone.
  bool best_pair_certificate = true;
  // Start each proximal solve from the previous solution instead of uniform.
  bool aprox_warm_start = false;

  // Entropy weight 1, triple step size, warm-started proximal solves: no
  // worst-case proof, much faster.
  static AreaOptions tuned() {
    AreaOptions o;
    o.entropy_weight = 1.0;
    o.step_multiplier = 3.0;
    o.aprox_warm_start = true;
    return o;
  }
};

struct Al1Result {
  EdgeFlow p;
  std::int64_t iterations = 0;
  double final_gap = 0.0;
  bool converged = false;
  double iteration_bound = 0.0;  // 432 d_tilde w_max log(m) / eps_tilde
  double passes = 0.0;
  double c = 0.0;
  int d_tilde = 0;
  double lower_bound = 0.0;
  std::vector<double> gap_history;
};

double al1_iteration_bound(int d_tilde, double w_max, int num_edges, double eps_tilde);

// Dual extrapolation on min_p max_y <p, w> + c y^T A p.
Al1Result al1(const WeightedDigraph& g, double eps_tilde, const AreaOptions& options = {});

struct AreaSolverConfig {
  double eps = 0.1;
  AreaOptions options;
};

SolveReport ammc_area(const WeightedDigraph& g, const AreaSolverConfig& cfg);

}  // namespace mmc
