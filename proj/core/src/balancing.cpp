#include "mmc/balancing.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mmc/errors.hpp"

namespace mmc {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Streaming max-shifted log-sum-exp.
class LogSumAccumulator {
 public:
  void add(double v) {
    if (v == kNegInf) return;
    if (v <= max_) {
      sum_ += std::exp(v - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - v) + 1.0;
      max_ = v;
    }
  }
  double value() const { return max_ == kNegInf ? kNegInf : max_ + std::log(sum_); }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

double log_self_loops(const BalanceProblem& prob) {
  LogSumAccumulator acc;
  const auto& g = prob.graph();
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (auto e = g.find_edge(v, v)) acc.add(prob.log_k(*e));
  }
  return acc.value();
}

double imbalance_from_sums(std::span<const double> lr, std::span<const double> lc,
                           double log_loops) {
  double shift = log_loops;
  for (std::size_t v = 0; v < lr.size(); ++v) shift = std::max({shift, lr[v], lc[v]});
  if (shift == kNegInf) return 0.0;
  double total = log_loops == kNegInf ? 0.0 : std::exp(log_loops - shift);
  double diff = 0.0;
  for (std::size_t v = 0; v < lr.size(); ++v) {
    const double r = std::exp(lr[v] - shift);
    const double c = std::exp(lc[v] - shift);
    total += r;
    diff += std::abs(r - c);
  }
  return diff / total;
}

}  // namespace

BalanceProblem::BalanceProblem(const WeightedDigraph& g, double eta, double delta)
    : g_(&g), eta_(eta), delta_(delta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw PreconditionViolation("eta must be positive");
  if (!(delta > 0.0)) throw PreconditionViolation("delta must be positive");
}

double BalanceProblem::log_kappa() const {
  if (g_->num_edges() == 0) return 0.0;
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (const Edge& e : g_->edges()) {
    hi = std::max(hi, e.weight);
    lo = std::min(lo, e.weight);
  }
  return eta_ * (hi - lo);
}

double BalanceProblem::log_kappa_bound() const {
  return std::log(static_cast<double>(std::max(g_->num_edges(), 1))) +
         2.0 * eta_ * g_->w_max();
}

double log_row_sum(std::span<const double> x, const BalanceProblem& prob, Vertex i) {
  LogSumAccumulator acc;
  const auto& g = prob.graph();
  for (EdgeId e : g.out_edges(i)) {
    if (g.head(e) != i) acc.add(log_scaled_entry(x, prob, e));
  }
  return acc.value();
}

double log_col_sum(std::span<const double> x, const BalanceProblem& prob, Vertex i) {
  LogSumAccumulator acc;
  const auto& g = prob.graph();
  for (EdgeId e : g.in_edges(i)) {
    if (g.tail(e) != i) acc.add(log_scaled_entry(x, prob, e));
  }
  return acc.value();
}

double log_total_mass(std::span<const double> x, const BalanceProblem& prob) {
  LogSumAccumulator acc;
  const auto& g = prob.graph();
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    for (EdgeId e : g.out_edges(v)) acc.add(log_scaled_entry(x, prob, e));
  }
  return acc.value();
}

double relative_imbalance(std::span<const double> x, const BalanceProblem& prob) {
  const auto& g = prob.graph();
  const double log_total = log_total_mass(x, prob);
  if (log_total == kNegInf) return 0.0;
  double diff = 0.0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    diff += std::abs(std::exp(log_row_sum(x, prob, v) - log_total) -
                     std::exp(log_col_sum(x, prob, v) - log_total));
  }
  return diff;
}

double osborne_step(std::span<double> x, Vertex i, const BalanceProblem& prob) {
  const double lr = log_row_sum(x, prob, i);
  const double lc = log_col_sum(x, prob, i);
  if (lr == kNegInf || lc == kNegInf) {
    throw NotStronglyConnected("vertex " + std::to_string(i) +
                               " has no in- or out-edge to another vertex; K is not balanceable");
  }
  const double shift = 0.5 * (lc - lr);
  x[i] += shift;
  return shift;
}

double default_osborne_work_cap(const BalanceProblem& prob) {
  const auto& g = prob.graph();
  const double m = std::max(g.num_edges(), 1);
  const double log_n = std::log(std::max(g.num_vertices(), 2));
  // 100 * m d^2 (w_max/eps)^2 log n, expressed through delta = eps/(16 w_max d).
  const double inv = 1.0 / (16.0 * prob.delta());
  return 100.0 * m * inv * inv * log_n;
}

BalanceResult random_osborne(const BalanceProblem& prob, std::uint64_t seed,
                             const OsborneOptions& options) {
  const auto& g = prob.graph();
  const int n = g.num_vertices();
  const auto un = static_cast<std::size_t>(n);
  const double m = std::max(g.num_edges(), 1);
  AuxMeter* meter = options.meter;

  BalanceResult res;
  res.x = make_aux_vector<double>(meter, un, 0.0);
  if (!options.warm_start.empty()) {
    if (options.warm_start.size() != un) throw PreconditionViolation("warm start has wrong length");
    std::copy(options.warm_start.begin(), options.warm_start.end(), res.x.begin());
  }
  auto& x = res.x;

  auto finish = [&](bool converged, double imb) {
    res.converged = converged;
    res.imbalance = imb;
    res.passes = res.work / m;
    res.log_total = log_total_mass(x, prob);
    return std::move(res);
  };

  // Any flow has imbalance at most 2.
  if (prob.delta() >= 2.0 || n <= 1) return finish(true, relative_imbalance(x, prob));

  auto lr = make_aux_vector<double>(meter, un, kNegInf);
  auto lc = make_aux_vector<double>(meter, un, kNegInf);
  const double log_loops = log_self_loops(prob);
  auto refresh_all = [&] {
    for (Vertex v = 0; v < n; ++v) {
      lr[v] = log_row_sum(x, prob, v);
      lc[v] = log_col_sum(x, prob, v);
    }
  };
  refresh_all();
  for (Vertex v = 0; v < n; ++v) {
    if (lr[v] == kNegInf || lc[v] == kNegInf) {
      throw NotStronglyConnected("vertex " + std::to_string(v) +
                                 " has no in- or out-edge to another vertex; K is not balanceable");
    }
  }

  double imb = imbalance_from_sums(lr, lc, log_loops);
  if (imb <= prob.delta()) return finish(true, imb);

  const double cap = options.work_cap.value_or(default_osborne_work_cap(prob));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Vertex> pick(0, n - 1);

  // log(e^cache + e^old * (e^factor - 1)); falls back to a fresh sum when the
  // update would cancel most of the cached value.
  auto bump = [](double cache, double old_entry, double factor) -> std::optional<double> {
    const double t = std::exp(old_entry - cache) * std::expm1(factor);
    if (t <= -0.5) return std::nullopt;
    return cache + std::log1p(t);
  };

  while (true) {
    for (int k = 0; k < n; ++k) {
      const Vertex i = pick(rng);
      const double delta_x = 0.5 * (lc[i] - lr[i]);
      const double x_old = x[i];
      x[i] += delta_x;
      for (EdgeId e : g.out_edges(i)) {
        const Vertex h = g.head(e);
        if (h == i) continue;
        const double old_entry = x_old - x[h] + prob.log_k(e);
        auto next = bump(lc[h], old_entry, delta_x);
        lc[h] = next ? *next : log_col_sum(x, prob, h);
      }
      for (EdgeId e : g.in_edges(i)) {
        const Vertex t = g.tail(e);
        if (t == i) continue;
        const double old_entry = x[t] - x_old + prob.log_k(e);
        auto next = bump(lr[t], old_entry, -delta_x);
        lr[t] = next ? *next : log_row_sum(x, prob, t);
      }
      lr[i] = lc[i] = 0.5 * (lr[i] + lc[i]);
      ++res.steps;
      res.work += g.out_degree(i) + g.in_degree(i);
    }

    const double estimate = imbalance_from_sums(lr, lc, log_loops);
    if (options.observer) options.observer({res.steps, res.work / m, estimate, x});
    if (estimate <= prob.delta()) {
      refresh_all();
      imb = imbalance_from_sums(lr, lc, log_loops);
      if (imb <= prob.delta()) return finish(true, imb);
    }
    if (res.work > cap) {
      refresh_all();
      imb = imbalance_from_sums(lr, lc, log_loops);
      res.diagnostic = "balancing stopped at the work cap of " + std::to_string(cap) +
                       " edge visits with imbalance " + std::to_string(imb) +
                       " (target " + std::to_string(prob.delta()) + ")";
      return finish(imb <= prob.delta(), imb);
    }
  }
}

ImplicitBalancedFlow::ImplicitBalancedFlow(std::span<const double> x,
                                           const BalanceProblem& prob,
                                           double log_drop_threshold)
    : x_(x), prob_(&prob), log_drop_(log_drop_threshold) {
  const auto& g = prob.graph();
  if (x.size() != static_cast<std::size_t>(g.num_vertices())) {
    throw PreconditionViolation("potential has wrong length");
  }
  if (g.num_edges() == 0) throw PreconditionViolation("graph has no edges");
  shift_ = kNegInf;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (!std::isfinite(x[v])) throw PreconditionViolation("potential is not finite");
    for (EdgeId e : g.out_edges(v)) shift_ = std::max(shift_, log_scaled_entry(x, prob, e));
  }
  double kept = 0.0;
  double all = 0.0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    for (EdgeId e : g.out_edges(v)) {
      const double shifted = log_scaled_entry(x, prob, e) - shift_;
      const double val = std::exp(shifted);
      all += val;
      if (shifted < log_drop_) {
        ++dropped_;
      } else {
        kept += val;
      }
    }
  }
  normalizer_ = kept;
  log_total_ = shift_ + std::log(all);
}

BalancedFlow build_balanced_flow(std::span<const double> x, const BalanceProblem& prob,
                                 double log_drop_threshold) {
  const ImplicitBalancedFlow entry(x, prob, log_drop_threshold);
  const auto& g = prob.graph();
  std::vector<double> p(static_cast<std::size_t>(g.num_edges()), 0.0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) p[e] = entry(e);
  BalancedFlow out{EdgeFlow(std::move(p))};
  out.imbalance = imbalance(g, out.p);
  out.log_total = entry.log_total();
  out.dropped = entry.dropped();
  return out;
}

}  // namespace mmc
