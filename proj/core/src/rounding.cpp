#include "mmc/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mmc/errors.hpp"
#include "mmc/graph_algorithms.hpp"

namespace mmc {
namespace {

// Repeatedly pairs the lowest-index vertex with excess inflow (i) and the
// lowest-index vertex with excess outflow (j) and pushes min(nf_i, -nf_j)
// along i -> root -> j. nf is inflow minus outflow and is driven to zero.
template <class Value, class AddFn>
void push_to_balance(const WeightedDigraph& g, const SpTreePair& tree,
                     std::span<Value> nf, AddFn&& add, bool shortcut) {
  const Vertex n = g.num_vertices();
  Vertex i = 0;
  Vertex j = 0;
  while (true) {
    while (i < n && !(nf[i] > Value{0})) ++i;
    while (j < n && !(nf[j] < Value{0})) ++j;
    if (i == n || j == n) return;
    const Value amount = std::min(nf[i], -nf[j]);
    std::optional<EdgeId> direct;
    if (shortcut) direct = g.find_edge(i, j);
    if (direct) {
      add(*direct, amount);
    } else {
      for (Vertex u = i; u != tree.root; u = g.head(tree.to_root_edge[u])) {
        add(tree.to_root_edge[u], amount);
      }
      for (Vertex u = j; u != tree.root; u = g.tail(tree.from_root_edge[u])) {
        add(tree.from_root_edge[u], amount);
      }
    }
    nf[i] -= amount;
    nf[j] += amount;
  }
}

// Cycle cancelling on an exact integer circulation given by units_of(e).
// Each vertex keeps a cursor into its out-edges and the residual of the edge
// under the cursor; only cursor edges are ever cancelled, so nothing else
// needs to be stored per edge.
template <class UnitsOf>
CycleExtraction cancel_cycles(const WeightedDigraph& g, UnitsOf&& units_of,
                              std::int64_t total_units, AuxMeter* meter) {
  const Vertex n = g.num_vertices();
  const auto un = static_cast<std::size_t>(n);
  if (total_units <= 0) throw NoCycle("zero flow has no cycle to extract");

  long double numerator = 0.0L;
  for (Vertex v = 0; v < n; ++v) {
    for (EdgeId e : g.out_edges(v)) {
      numerator += static_cast<long double>(units_of(e)) * g.weight(e);
    }
  }
  CycleExtraction out;
  out.target = static_cast<double>(numerator / static_cast<long double>(total_units));
  const double tol = 1e-12 * std::max(1.0, std::abs(out.target));

  auto cursor = make_aux_vector<int>(meter, un, 0);
  auto residual = make_aux_vector<std::int64_t>(meter, un, -1);
  auto pos = make_aux_vector<int>(meter, un, -1);
  AuxVector<Vertex> path{MeteredAllocator<Vertex>(meter)};
  path.reserve(un);
  AuxVector<EdgeId> best{MeteredAllocator<EdgeId>(meter)};
  best.reserve(un);
  double best_mean = std::numeric_limits<double>::infinity();

  auto settle = [&](Vertex v) {
    auto edges = g.out_edges(v);
    while (cursor[v] < static_cast<int>(edges.size())) {
      if (residual[v] < 0) residual[v] = units_of(edges[static_cast<std::size_t>(cursor[v])]);
      if (residual[v] > 0) return true;
      ++cursor[v];
      residual[v] = -1;
    }
    return false;
  };
  auto cursor_edge = [&](Vertex v) { return g.out_edges(v)[static_cast<std::size_t>(cursor[v])]; };

  Vertex scan = 0;
  while (true) {
    if (path.empty()) {
      while (scan < n && !settle(scan)) ++scan;
      if (scan == n) break;
      pos[scan] = 0;
      path.push_back(scan);
    }
    const Vertex u = path.back();
    if (!settle(u)) {
      if (path.size() != 1) throw std::logic_error("cycle cancelling lost flow conservation");
      pos[u] = -1;
      path.pop_back();
      continue;
    }
    const Vertex h = g.head(cursor_edge(u));
    if (pos[h] < 0) {
      pos[h] = static_cast<int>(path.size());
      path.push_back(h);
      continue;
    }

    const auto start = static_cast<std::size_t>(pos[h]);
    const std::size_t len = path.size() - start;
    double sum = 0.0;
    std::int64_t bottleneck = std::numeric_limits<std::int64_t>::max();
    for (std::size_t k = start; k < path.size(); ++k) {
      sum += g.weight(cursor_edge(path[k]));
      bottleneck = std::min(bottleneck, residual[path[k]]);
    }
    const double mean = sum / static_cast<double>(len);
    if (mean <= out.target + tol || mean < best_mean) {
      best.clear();
      for (std::size_t k = start; k < path.size(); ++k) best.push_back(cursor_edge(path[k]));
      best_mean = mean;
      if (mean <= out.target + tol) {
        out.early_exit = true;
        break;
      }
    }
    for (std::size_t k = start; k < path.size(); ++k) residual[path[k]] -= bottleneck;
    out.cancelled_edge_visits += static_cast<std::int64_t>(len);
    ++out.cycles_cancelled;
    for (std::size_t k = start + 1; k < path.size(); ++k) pos[path[k]] = -1;
    path.resize(start + 1);
  }
  if (best.empty()) throw NoCycle("circulation contained no cycle");
  out.cycle = Cycle::from_edges(g, std::vector<EdgeId>(best.begin(), best.end()));
  return out;
}

void check_eps(const WeightedDigraph& g, double eps) {
  if (!(eps > 0.0) || eps > 2.0 * g.w_max()) {
    throw PreconditionViolation("eps must lie in (0, 2 w_max]");
  }
}

void check_imbalance(double imb, int d_tilde) {
  const double limit = 2.0 / std::max(d_tilde, 1);
  if (imb > limit + 1e-12) {
    throw PreconditionViolation("flow imbalance " + std::to_string(imb) +
                                " exceeds 2/d_tilde = " + std::to_string(limit));
  }
}

std::int64_t quantize(double value, double alpha) {
  return static_cast<std::int64_t>(std::floor(value / alpha));
}

}  // namespace

EdgeFlow QuantizedCirculation::flow() const {
  std::vector<double> v(units.size());
  for (std::size_t e = 0; e < units.size(); ++e) {
    v[e] = static_cast<double>(units[e]) / static_cast<double>(total_units);
  }
  return EdgeFlow(std::move(v));
}

EdgeFlow round_circ(const WeightedDigraph& g, const EdgeFlow& p, const RoundingOptions& options) {
  if (p.size() != static_cast<std::size_t>(g.num_edges())) {
    throw PreconditionViolation("flow length does not match edge count");
  }
  NetflowVector nf = netflow(g, p);
  if (imbalance(nf) == 0.0) return p;
  const SpTreePair tree = sp_tree_pair(g, options.root);
  std::vector<double> q(p.values().begin(), p.values().end());
  push_to_balance<double>(g, tree, std::span<double>(nf),
                          [&](EdgeId e, double amount) { q[e] += amount; },
                          options.direct_edge_shortcut);
  return EdgeFlow(std::move(q)).normalized();
}

double quantum_alpha(double eps, int num_edges, int d_tilde, double w_max) {
  return eps / (40.0 * std::max(num_edges, 1) * std::max(d_tilde, 1) * w_max);
}

QuantizedCirculation round_qcirc(const WeightedDigraph& g, const EdgeFlow& p, double eps,
                                 int d_tilde, const RoundingOptions& options) {
  check_eps(g, eps);
  if (p.size() != static_cast<std::size_t>(g.num_edges())) {
    throw PreconditionViolation("flow length does not match edge count");
  }
  if (!p.in_simplex()) throw PreconditionViolation("flow must have unit total mass");
  check_imbalance(imbalance(g, p), d_tilde);

  QuantizedCirculation qc;
  qc.alpha = quantum_alpha(eps, g.num_edges(), d_tilde, g.w_max());
  qc.units.resize(p.size());
  std::vector<std::int64_t> nf(static_cast<std::size_t>(g.num_vertices()), 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const std::int64_t k = quantize(p[e], qc.alpha);
    qc.units[e] = k;
    qc.quantized_units += k;
    nf[g.head(e)] += k;
    nf[g.tail(e)] -= k;
  }
  if (qc.quantized_units == 0) throw PreconditionViolation("flow vanished under quantization");
  qc.total_units = qc.quantized_units;
  const SpTreePair tree = sp_tree_pair(g, options.root);
  push_to_balance<std::int64_t>(
      g, tree, std::span<std::int64_t>(nf),
      [&](EdgeId e, std::int64_t amount) {
        qc.units[e] += amount;
        qc.total_units += amount;
      },
      options.direct_edge_shortcut);
  qc.beta = 1.0 / static_cast<double>(qc.quantized_units);
  qc.gamma = 1.0 / static_cast<double>(qc.total_units);
  return qc;
}

QuantizedCirculation round_qcirc(const WeightedDigraph& g, const EdgeFlow& p, double eps,
                                 const RoundingOptions& options) {
  return round_qcirc(g, p, eps, adiam(g, options.root).d_tilde, options);
}

CycleExtraction round_cycle(const WeightedDigraph& g, const QuantizedCirculation& qc,
                            AuxMeter* meter) {
  if (qc.units.size() != static_cast<std::size_t>(g.num_edges())) {
    throw PreconditionViolation("circulation length does not match edge count");
  }
  return cancel_cycles(
      g, [&](EdgeId e) { return qc.units[static_cast<std::size_t>(e)]; }, qc.total_units,
      meter);
}

PipelineResult round_pipeline(const WeightedDigraph& g, const EdgeFlow& p, double eps,
                              int d_tilde, const RoundingOptions& options) {
  const QuantizedCirculation qc = round_qcirc(g, p, eps, d_tilde, options);
  PipelineResult res;
  res.extraction = round_cycle(g, qc);
  res.total_units = qc.total_units;
  res.quantized_units = qc.quantized_units;
  res.alpha = qc.alpha;
  return res;
}

Cycle round_pipeline(const WeightedDigraph& g, const EdgeFlow& p, double eps) {
  return round_pipeline(g, p, eps, adiam(g).d_tilde).extraction.cycle;
}

PipelineResult round_pipeline_oracle(const WeightedDigraph& g,
                                     const std::function<double(EdgeId)>& p_entry,
                                     double eps, int d_tilde, AuxMeter* meter,
                                     const RoundingOptions& options) {
  check_eps(g, eps);
  const auto un = static_cast<std::size_t>(g.num_vertices());
  PipelineResult res;
  res.alpha = quantum_alpha(eps, g.num_edges(), d_tilde, g.w_max());
  const double alpha = res.alpha;
  auto quant = [&](EdgeId e) { return quantize(p_entry(e), alpha); };

  AuxMap<EdgeId, std::int64_t> ledger{MeteredAllocator<std::pair<const EdgeId, std::int64_t>>(meter)};
  {
    double total = 0.0;
    auto nf_real = make_aux_vector<double>(meter, un, 0.0);
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      for (EdgeId e : g.out_edges(v)) {
        const double val = p_entry(e);
        total += val;
        nf_real[g.head(e)] += val;
        nf_real[v] -= val;
      }
    }
    if (std::abs(total - 1.0) > 1e-9) throw PreconditionViolation("flow must have unit total mass");
    check_imbalance(imbalance(nf_real), d_tilde);
  }
  {
    auto nf = make_aux_vector<std::int64_t>(meter, un, 0);
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      for (EdgeId e : g.out_edges(v)) {
        const std::int64_t k = quant(e);
        res.quantized_units += k;
        nf[g.head(e)] += k;
        nf[v] -= k;
      }
    }
    if (res.quantized_units == 0) throw PreconditionViolation("flow vanished under quantization");
    res.total_units = res.quantized_units;
    const SpTreePair tree = sp_tree_pair(g, options.root, meter);
    push_to_balance<std::int64_t>(
        g, tree, std::span<std::int64_t>(nf.data(), nf.size()),
        [&](EdgeId e, std::int64_t amount) {
          ledger[e] += amount;
          res.total_units += amount;
        },
        options.direct_edge_shortcut);
  }
  res.ledger_entries = ledger.size();
  res.extraction = cancel_cycles(
      g,
      [&](EdgeId e) {
        std::int64_t k = quant(e);
        if (auto it = ledger.find(e); it != ledger.end()) k += it->second;
        return k;
      },
      res.total_units, meter);
  return res;
}

}  // namespace mmc
