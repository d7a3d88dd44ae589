#include "mmc/solver_area.hpp"

#include <algorithm>
#include <cfloat>
#include <chrono>
#include <cmath>
#include <limits>

#include "entropic_kernel.hpp"
#include "mmc/errors.hpp"
#include "mmc/graph_algorithms.hpp"
#include "mmc/rounding.hpp"

namespace mmc {
namespace {

void check_sizes(std::size_t got, int want) {
  if (got != static_cast<std::size_t>(want)) throw PreconditionViolation("operator size mismatch");
}

// Operator images of a point; the saddle gradient and both penalized values
// are cheap functions of these.
struct Images {
  std::vector<double> ax;   // A x
  std::vector<double> aty;  // A^T y
  double wx = 0.0;          // <w, x>
};

void evaluate(const IncidenceOperator& op, const PairedVector& pt, Images& out) {
  const auto& g = op.graph();
  out.ax.resize(static_cast<std::size_t>(g.num_vertices()));
  out.aty.resize(static_cast<std::size_t>(g.num_edges()));
  op.apply(pt.x, out.ax);
  op.apply_transpose(pt.y, out.aty);
  out.wx = 0.0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) out.wx += g.weight(e) * pt.x[e];
}

// pt += a * g(p, y), where g(p, y) = [w + c A^T y, -c A p]
void add_gradient(const WeightedDigraph& g, double c, const Images& im, double a,
                  PairedVector& pt) {
  for (EdgeId e = 0; e < g.num_edges(); ++e) pt.x[e] += a * (g.weight(e) + c * im.aty[e]);
  for (std::size_t k = 0; k < pt.y.size(); ++k) pt.y[k] -= a * c * im.ax[k];
}

double primal_from(double c, const Images& im, double scale) {
  double imb = 0.0;
  for (double v : im.ax) imb += std::abs(v);
  return scale * (im.wx + c * imb);
}

double dual_from(const WeightedDigraph& g, double c, const Images& im, double scale) {
  double best = std::numeric_limits<double>::infinity();
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    best = std::min(best, g.weight(e) + c * scale * im.aty[e]);
  return best;
}


}  // namespace

IncidenceOperator::IncidenceOperator(const WeightedDigraph& g) : g_(&g) {
  tails_.reserve(static_cast<std::size_t>(g.num_edges()));
  heads_.reserve(static_cast<std::size_t>(g.num_edges()));
  for (const Edge& e : g.edges()) {
    tails_.push_back(e.tail);
    heads_.push_back(e.head);
    has_self_loops_ = has_self_loops_ || e.tail == e.head;
  }
}

// Self-loops have a zero column in A and in |A|.
void IncidenceOperator::apply(std::span<const double> p, std::span<double> out) const {
  check_sizes(p.size(), g_->num_edges());
  check_sizes(out.size(), g_->num_vertices());
  std::fill(out.begin(), out.end(), 0.0);
  const std::size_t m = tails_.size();
  for (std::size_t e = 0; e < m; ++e) {
    if (has_self_loops_ && tails_[e] == heads_[e]) continue;
    out[heads_[e]] += p[e];
    out[tails_[e]] -= p[e];
  }
  ++applications_;
}

void IncidenceOperator::apply_abs(std::span<const double> p, std::span<double> out) const {
  check_sizes(p.size(), g_->num_edges());
  check_sizes(out.size(), g_->num_vertices());
  std::fill(out.begin(), out.end(), 0.0);
  const std::size_t m = tails_.size();
  for (std::size_t e = 0; e < m; ++e) {
    if (has_self_loops_ && tails_[e] == heads_[e]) continue;
    out[heads_[e]] += p[e];
    out[tails_[e]] += p[e];
  }
  ++applications_;
}

void IncidenceOperator::apply_transpose(std::span<const double> y, std::span<double> out) const {
  check_sizes(y.size(), g_->num_vertices());
  check_sizes(out.size(), g_->num_edges());
  const std::size_t m = tails_.size();
  for (std::size_t e = 0; e < m; ++e) out[e] = y[heads_[e]] - y[tails_[e]];
  ++applications_;
}

void IncidenceOperator::apply_abs_transpose(std::span<const double> y,
                                            std::span<double> out) const {
  check_sizes(y.size(), g_->num_vertices());
  check_sizes(out.size(), g_->num_edges());
  const std::size_t m = tails_.size();
  if (has_self_loops_) {
    for (std::size_t e = 0; e < m; ++e)
      out[e] = tails_[e] == heads_[e] ? 0.0 : y[heads_[e]] + y[tails_[e]];
  } else {
    for (std::size_t e = 0; e < m; ++e) out[e] = y[heads_[e]] + y[tails_[e]];
  }
  ++applications_;
}

PairedVector SaddleState::average() const {
  if (t == 0) return s;
  PairedVector avg = u_sum;
  const double inv = 1.0 / static_cast<double>(t);
  for (double& v : avg.x) v *= inv;
  for (double& v : avg.y) v *= inv;
  return avg;
}

double penalized_dual_value(const IncidenceOperator& op, double c, std::span<const double> y) {
  const auto& g = op.graph();
  std::vector<double> aty(static_cast<std::size_t>(g.num_edges()));
  op.apply_transpose(y, aty);
  double best = std::numeric_limits<double>::infinity();
  for (EdgeId e = 0; e < g.num_edges(); ++e) best = std::min(best, g.weight(e) + c * aty[e]);
  return best;
}

double penalized_primal_value(const IncidenceOperator& op, double c, std::span<const double> p) {
  const auto& g = op.graph();
  std::vector<double> ap(static_cast<std::size_t>(g.num_vertices()));
  op.apply(p, ap);
  double primal = 0.0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) primal += p[e] * g.weight(e);
  return primal + c * imbalance(ap);
}

double duality_gap(const IncidenceOperator& op, double c, std::span<const double> px,
                   std::span<const double> py) {
  return penalized_primal_value(op, c, px) - penalized_dual_value(op, c, py);
}

double duality_gap(const SaddleState& state, const IncidenceOperator& op) {
  const PairedVector avg = state.average();
  return duality_gap(op, state.c, avg.x, avg.y);
}

int aprox_round_budget(double c, double eps_prime, int n) {
  const double loglog = std::max(0.0, std::log(std::log(std::max(n, 3))));
  const double rounds = std::log(std::max(c / eps_prime, 1.0)) + loglog + 3.0;
  return std::max(1, static_cast<int>(std::ceil(rounds)));
}

namespace {

struct AproxWorkspace {
  std::vector<double> ax, y2, aty2, next, base;
};

// Proximal solve into `out`, reusing the workspace buffers. Returns the rounds used.
int aprox_into(const IncidenceOperator& op, double c, const PairedVector& v, double eps_prime,
               const AproxOptions& options, AproxWorkspace& ws, PairedVector& out) {
  if (!(c > 0.0)) throw PreconditionViolation("aprox needs c > 0");
  const auto& g = op.graph();
  const auto m = static_cast<std::size_t>(g.num_edges());
  const auto n = static_cast<std::size_t>(g.num_vertices());
  check_sizes(v.x.size(), g.num_edges());
  check_sizes(v.y.size(), g.num_vertices());
  const double beta = options.entropy_weight;

  auto& x = out.x;
  auto& y = out.y;
  if (options.warm_start.empty()) {
    x.assign(m, 1.0 / static_cast<double>(m));
  } else {
    check_sizes(options.warm_start.size(), g.num_edges());
    x.assign(options.warm_start.begin(), options.warm_start.end());
  }
  y.assign(n, 0.0);
  ws.ax.resize(n);
  ws.y2.resize(n);
  ws.aty2.resize(m);
  ws.next.resize(m);
  ws.base.resize(m);
  auto& next = ws.next;
  const double inv_beta = 1.0 / beta;
  for (std::size_t e = 0; e < m; ++e) ws.base[e] = -v.x[e] * inv_beta / c;
  const int budget = aprox_round_budget(c, eps_prime, g.num_vertices());
  const double still = eps_prime / (4.0 * c);

  int rounds = 0;
  for (int r = 0; r < budget; ++r) {
    op.apply_abs(x, ws.ax);
    for (std::size_t k = 0; k < n; ++k) {
      const double denom = 2.0 * c * ws.ax[k];
      if (denom > 0.0) {
        y[k] = std::clamp(-v.y[k] / denom, -1.0, 1.0);
      } else {
        y[k] = v.y[k] < 0.0 ? 1.0 : (v.y[k] > 0.0 ? -1.0 : 0.0);
      }
      ws.y2[k] = y[k] * y[k];
    }
    op.apply_abs_transpose(ws.y2, ws.aty2);
    const double move = detail::entropic_update(ws.base, ws.aty2, inv_beta, x, next);
    x.swap(next);
    rounds = r + 1;
    if (options.early_exit && move < still) break;
  }
  return rounds;
}

}  // namespace

AproxResult aprox(const IncidenceOperator& op, double c, const PairedVector& v,
                  double eps_prime, const AproxOptions& options) {
  AproxWorkspace ws;
  AproxResult res;
  res.rounds = aprox_into(op, c, v, eps_prime, options, ws, res.point);
  return res;
}

double al1_iteration_bound(int d_tilde, double w_max, int num_edges, double eps_tilde) {
  return 432.0 * std::max(d_tilde, 1) * w_max *
         std::log(static_cast<double>(std::max(num_edges, 2))) / eps_tilde;
}

Al1Result al1(const WeightedDigraph& g, double eps_tilde, const AreaOptions& options) {
  if (!(eps_tilde > 0.0)) throw PreconditionViolation("eps_tilde must be positive");
  if (g.num_edges() == 0) throw PreconditionViolation("graph has no edges");
  if (!(g.w_max() > 0.0)) throw PreconditionViolation("all weights are zero");
  const auto m = static_cast<std::size_t>(g.num_edges());
  const auto n = static_cast<std::size_t>(g.num_vertices());

  Al1Result res;
  res.d_tilde = adiam(g).d_tilde;
  res.c = 3.0 * std::max(res.d_tilde, 1) * g.w_max();
  res.iteration_bound = al1_iteration_bound(res.d_tilde, g.w_max(), g.num_edges(), eps_tilde);
  const std::int64_t max_iters =
      options.max_iters.value_or(static_cast<std::int64_t>(std::ceil(res.iteration_bound)));

  const IncidenceOperator op(g);
  SaddleState st;
  st.c = res.c;
  st.eps_tilde = eps_tilde;
  st.s = {std::vector<double>(m, 1.0 / static_cast<double>(m)), std::vector<double>(n, 0.0)};
  st.u_sum = {std::vector<double>(m, 0.0), std::vector<double>(n, 0.0)};
  AproxOptions prox{options.entropy_weight, options.aprox_early_exit, {}};
  const double first_step = options.step_multiplier / 3.0;
  const double second_step = options.step_multiplier / 6.0;

  // Best certified pair so far; starts at the initial point. The averaged
  // iterate is evaluated through running sums of A u and A^T u, which equal
  // the images of the average by linearity.
  Images im, sum;
  evaluate(op, st.s, im);
  sum.ax.assign(n, 0.0);
  sum.aty.assign(m, 0.0);
  std::vector<double> best_x = st.s.x;
  double best_primal = primal_from(st.c, im, 1.0);
  double best_dual = dual_from(g, st.c, im, 1.0);
  auto offer = [&](const Images& at, double scale, const std::vector<double>& x, double inv) {
    const double primal = primal_from(st.c, at, scale);
    if (primal < best_primal) {
      best_primal = primal;
      best_x = x;
      if (inv != 1.0) {
        for (double& v : best_x) v *= inv;
      }
    }
    best_dual = std::max(best_dual, dual_from(g, st.c, at, scale));
  };

  double gap = best_primal - best_dual;
  if (options.record_gap_history) res.gap_history.push_back(gap);
  PairedVector probe;
  AproxWorkspace ws;
  while (gap > eps_tilde && st.t < max_iters) {
    if (options.aprox_warm_start && st.t > 0) prox.warm_start = st.u.x;
    aprox_into(op, st.c, st.s, eps_tilde / 2.0, prox, ws, st.z);
    evaluate(op, st.z, im);
    probe = st.s;
    add_gradient(g, st.c, im, first_step, probe);
    if (options.aprox_warm_start) prox.warm_start = st.z.x;
    aprox_into(op, st.c, probe, eps_tilde / 2.0, prox, ws, st.u);
    evaluate(op, st.u, im);
    add_gradient(g, st.c, im, second_step, st.s);
    for (std::size_t e = 0; e < m; ++e) {
      st.u_sum.x[e] += st.u.x[e];
      sum.aty[e] += im.aty[e];
    }
    for (std::size_t k = 0; k < n; ++k) {
      st.u_sum.y[k] += st.u.y[k];
      sum.ax[k] += im.ax[k];
    }
    sum.wx += im.wx;
    ++st.t;
    const double inv_t = 1.0 / static_cast<double>(st.t);
    if (options.best_pair_certificate) {
      offer(sum, inv_t, st.u_sum.x, inv_t);
      offer(im, 1.0, st.u.x, 1.0);
    } else {
      best_primal = std::numeric_limits<double>::infinity();
      best_dual = -std::numeric_limits<double>::infinity();
      offer(sum, inv_t, st.u_sum.x, inv_t);
    }
    gap = best_primal - best_dual;
    if (options.record_gap_history) res.gap_history.push_back(gap);
  }

  res.p = EdgeFlow(std::move(best_x)).normalized();
  res.iterations = st.t;
  res.final_gap = gap;
  res.converged = gap <= eps_tilde;
  res.lower_bound = best_dual;
  res.passes = static_cast<double>(op.applications());
  return res;
}

SolveReport ammc_area(const WeightedDigraph& g, const AreaSolverConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  if (g.num_edges() == 0) throw NoCycle("graph has no edges");
  if (!(cfg.eps > 0.0)) throw PreconditionViolation("eps must be positive");
  SolveReport rep;
  auto stamp = [&] {
    rep.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - started)
                      .count();
  };
  rep.d_tilde = adiam(g).d_tilde;
  if (cfg.eps > 2.0 * g.w_max()) {
    rep.cycle = find_any_cycle(g);
    rep.mean = rep.cycle->mean;
    rep.lower_bound = -g.w_max();
    rep.diagnostic = "eps exceeds 2 w_max; returned the first cycle found";
    stamp();
    return rep;
  }

  Al1Result opt = al1(g, cfg.eps / 16.0, cfg.options);
  rep.steps = opt.iterations;
  rep.passes = opt.passes;
  rep.gap_history = std::move(opt.gap_history);
  rep.lower_bound = opt.lower_bound;
  rep.imbalance = imbalance(g, opt.p);
  rep.lp_cost = lp_cost(g, opt.p);
  if (!opt.converged) {
    rep.status = SolveStatus::kIterationCap;
    rep.diagnostic = "dual extrapolation stopped after " + std::to_string(opt.iterations) +
                     " iterations with gap " + std::to_string(opt.final_gap);
  }
  try {
    PipelineResult rounded = round_pipeline(g, opt.p, cfg.eps, std::max(rep.d_tilde, 1));
    rep.cycle = std::move(rounded.extraction.cycle);
    rep.mean = rep.cycle->mean;
  } catch (const PreconditionViolation& e) {
    if (rep.status == SolveStatus::kOk) throw;
    rep.diagnostic += "; rounding skipped: ";
    rep.diagnostic += e.what();
  }
  stamp();
  return rep;
}

}  // namespace mmc
