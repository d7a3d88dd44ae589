#include "mmc/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "mmc/errors.hpp"

namespace mmc {
namespace {

// 2^-24: coarse enough that sums of a few hundred grid values stay exact.
constexpr double kGrid = 1.0 / 16777216.0;

double snap(double v) { return std::round(v / kGrid) * kGrid; }

std::vector<Vertex> random_order(int n, std::mt19937_64& rng) {
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

}  // namespace

WeightedDigraph random_strongly_connected(int n, int extra_edges, double w_lo, double w_hi,
                                          std::uint64_t seed, bool allow_self_loops) {
  if (n < 1) throw PreconditionViolation("need at least one vertex");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(w_lo, w_hi);
  std::uniform_int_distribution<Vertex> vertex(0, n - 1);
  std::set<std::pair<Vertex, Vertex>> used;
  std::vector<Edge> edges;
  const auto order = random_order(n, rng);
  if (n == 1) {
    edges.push_back({0, 0, weight(rng)});
    used.emplace(0, 0);
  } else {
    for (int k = 0; k < n; ++k) {
      const Vertex u = order[k];
      const Vertex v = order[(k + 1) % n];
      edges.push_back({u, v, weight(rng)});
      used.emplace(u, v);
    }
  }
  const long long capacity = static_cast<long long>(n) * (allow_self_loops ? n : n - 1);
  const long long target =
      std::min<long long>(capacity, static_cast<long long>(edges.size()) + std::max(extra_edges, 0));
  while (static_cast<long long>(edges.size()) < target) {
    const Vertex u = vertex(rng);
    const Vertex v = vertex(rng);
    if (u == v && !allow_self_loops) continue;
    if (!used.emplace(u, v).second) continue;
    edges.push_back({u, v, weight(rng)});
  }
  return WeightedDigraph(n, std::move(edges));
}

WeightedDigraph complete_digraph(int n, double w_lo, double w_hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(w_lo, w_hi);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(std::max(n - 1, 0)));
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (u != v) edges.push_back({u, v, weight(rng)});
    }
  }
  return WeightedDigraph(n, std::move(edges));
}

WeightedDigraph directed_ring(const std::vector<double>& weights) {
  const int n = static_cast<int>(weights.size());
  std::vector<Edge> edges;
  for (int k = 0; k < n; ++k) edges.push_back({k, (k + 1) % n, weights[k]});
  return WeightedDigraph(n, std::move(edges));
}

WeightedDigraph random_unit_weight_no_negative_cycle(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::vector<int> phi(static_cast<std::size_t>(n));
  for (int& p : phi) p = coin(rng) ? 1 : 0;
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (u == v) continue;
      // w + phi_u - phi_v >= 0 rules out negative cycles.
      const int lo = std::max(-1, phi[v] - phi[u]);
      std::uniform_int_distribution<int> pick(lo, 1);
      edges.push_back({u, v, static_cast<double>(pick(rng))});
    }
  }
  return WeightedDigraph(n, std::move(edges));
}

WeightedDigraph random_integer_no_negative_cycle(int n, int extra_edges, int max_abs,
                                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int half = std::max(max_abs / 2, 0);
  std::uniform_int_distribution<int> pot(0, half);
  std::vector<int> phi(static_cast<std::size_t>(n));
  for (int& p : phi) p = pot(rng);
  WeightedDigraph shape = random_strongly_connected(n, extra_edges, 0.0, 1.0, rng());
  std::vector<Edge> edges(shape.edges().begin(), shape.edges().end());
  for (Edge& e : edges) {
    // reduced weight r >= 0, actual weight r - phi_u + phi_v
    const int shift = phi[e.head] - phi[e.tail];
    const int lo = std::max(0, -max_abs - shift);
    const int hi = std::max(lo, max_abs - shift);
    std::uniform_int_distribution<int> reduced(lo, hi);
    e.weight = static_cast<double>(reduced(rng) + shift);
  }
  return WeightedDigraph(n, std::move(edges));
}

PlantedInstance gen_arbitrage_like(int n, std::uint64_t seed, double deletion_rate) {
  if (n < 2) throw PreconditionViolation("planted instance needs n >= 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> log_price(0.0, 1.0);
  std::uniform_real_distribution<double> spread(0.0005, 0.02);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> disguise(0.0, 0.1);

  std::vector<double> level(static_cast<std::size_t>(n));
  for (double& l : level) l = log_price(rng);

  // -log(rate) for rate = price_j / price_i * (1 - spread)
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (u != v) edges.push_back({u, v, level[u] - level[v] + spread(rng)});
    }
  }
  double lo = edges.front().weight;
  double hi = lo;
  for (const Edge& e : edges) {
    lo = std::min(lo, e.weight);
    hi = std::max(hi, e.weight);
  }
  for (Edge& e : edges) e.weight = snap((e.weight - lo) / (hi - lo));

  const auto cycle = random_order(n, rng);
  std::set<std::pair<Vertex, Vertex>> planted;
  const int cheap = std::uniform_int_distribution<int>(0, n - 1)(rng);
  std::vector<double> planted_weight(static_cast<std::size_t>(n) * n, -1.0);
  for (int k = 0; k < n; ++k) {
    const Vertex u = cycle[k];
    const Vertex v = cycle[(k + 1) % n];
    planted.emplace(u, v);
    planted_weight[static_cast<std::size_t>(u) * n + v] = snap(k == cheap ? 0.1 : 0.5);
  }

  std::vector<Edge> kept;
  for (Edge e : edges) {
    const double pw = planted_weight[static_cast<std::size_t>(e.tail) * n + e.head];
    if (pw >= 0.0) {
      e.weight = pw;
    } else if (unit(rng) < deletion_rate) {
      continue;
    }
    kept.push_back(e);
  }

  PlantedInstance inst;
  inst.potential.resize(static_cast<std::size_t>(n));
  for (double& p : inst.potential) p = snap(disguise(rng));
  std::vector<Edge> disguised(kept);
  for (Edge& e : disguised) e.weight += inst.potential[e.tail] - inst.potential[e.head];

  inst.undisguised = WeightedDigraph(n, std::move(kept));
  inst.graph = WeightedDigraph(n, std::move(disguised));
  inst.planted_cycle.assign(cycle.begin(), cycle.end());
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    sum += planted_weight[static_cast<std::size_t>(cycle[k]) * n + cycle[(k + 1) % n]];
  }
  inst.planted_mean = sum / n;
  return inst;
}

}  // namespace mmc
