#include "mmc_cli/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <iomanip>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "mmc/balancing.hpp"
#include "mmc/baselines.hpp"
#include "mmc/errors.hpp"
#include "mmc/generators.hpp"
#include "mmc/graph_algorithms.hpp"
#include "mmc/rounding.hpp"
#include "mmc/solver_bal.hpp"

namespace mmc::cli {
namespace {

// Runs body(0..count-1) on up to worker_threads() threads; rethrows the first
// exception after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(worker_threads()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

struct Instance {
  WeightedDigraph graph;
  double mu = 0.0;
  int d_tilde = 0;
};

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
      .count();
}

}  // namespace

SolverKind parse_solver(const std::string& name) {
  if (name == "bal") return SolverKind::kBal;
  if (name == "area") return SolverKind::kArea;
  if (name == "karp") return SolverKind::kKarp;
  throw PreconditionViolation("unknown solver '" + name + "' (expected bal, area or karp)");
}

const char* to_string(SolverKind s) {
  switch (s) {
    case SolverKind::kBal:
      return "bal";
    case SolverKind::kArea:
      return "area";
    case SolverKind::kKarp:
      return "karp";
  }
  return "unknown";
}

WeightedDigraph generate(const GeneratorSpec& gen, int n, std::uint64_t seed) {
  if (gen.name == "arbitrage") return gen_arbitrage_like(n, seed).graph;
  if (gen.name == "complete") return complete_digraph(n, gen.w_lo, gen.w_hi, seed);
  if (gen.name == "random") {
    const double pairs = static_cast<double>(n) * (n - 1);
    return random_strongly_connected(n, static_cast<int>(std::lround(gen.density * pairs)),
                                     gen.w_lo, gen.w_hi, seed);
  }
  throw PreconditionViolation("unknown generator '" + gen.name +
                              "' (expected arbitrage, random or complete)");
}

void ExperimentSpec::validate() const {
  if (sizes.empty()) throw PreconditionViolation("size list is empty");
  if (solvers.empty()) throw PreconditionViolation("solver list is empty");
  if (eps_list.empty()) throw PreconditionViolation("eps list is empty");
  if (seeds.empty()) throw PreconditionViolation("seed list is empty");
  for (int n : sizes) {
    if (n < 2) throw PreconditionViolation("instance sizes must be at least 2");
  }
  for (double e : eps_list) {
    if (!(e > 0.0)) throw PreconditionViolation("eps values must be positive");
  }
  for (double e : eta_list) {
    if (!(e > 0.0)) throw PreconditionViolation("eta values must be positive");
  }
}

void write_csv(std::ostream& out, std::span<const BenchRecord> rows) {
  out << kCsvHeader << '\n';
  out << std::setprecision(10);
  for (const BenchRecord& r : rows) {
    out << r.n << ',' << r.m << ',' << r.d_tilde << ',' << r.solver << ',' << r.eps << ','
        << r.eta << ',' << r.passes << ',' << r.wall_ms << ',' << r.err_vs_exact << ','
        << r.seed << '\n';
  }
}

int worker_threads() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MMC_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return std::min(v, static_cast<int>(hw) * 4);
  }
  return static_cast<int>(hw);
}

std::vector<BenchRecord> run_bench(const ExperimentSpec& spec) {
  spec.validate();
  const std::size_t num_seeds = spec.seeds.size();
  std::vector<Instance> instances(spec.sizes.size() * num_seeds);
  parallel_for(instances.size(), [&](std::size_t k) {
    Instance& inst = instances[k];
    inst.graph = generate(spec.generator, spec.sizes[k / num_seeds], spec.seeds[k % num_seeds]);
    inst.mu = karp_mmc(inst.graph).mu;
    inst.d_tilde = adiam(inst.graph).d_tilde;
  });

  struct Cell {
    std::size_t instance;
    SolverKind solver;
    double eps;
    std::optional<double> eta;
  };
  std::vector<Cell> cells;
  for (std::size_t k = 0; k < instances.size(); ++k) {
    for (SolverKind s : spec.solvers) {
      for (double eps : spec.eps_list) {
        if (s == SolverKind::kBal && !spec.eta_list.empty()) {
          for (double eta : spec.eta_list) cells.push_back({k, s, eps, eta});
        } else {
          cells.push_back({k, s, eps, std::nullopt});
        }
      }
    }
  }

  std::vector<BenchRecord> rows(cells.size());
  parallel_for(cells.size(), [&](std::size_t c) {
    const Cell& cell = cells[c];
    const Instance& inst = instances[cell.instance];
    BenchRecord& r = rows[c];
    r.n = inst.graph.num_vertices();
    r.m = inst.graph.num_edges();
    r.d_tilde = inst.d_tilde;
    r.solver = to_string(cell.solver);
    r.eps = cell.eps;
    r.seed = spec.seeds[cell.instance % num_seeds];
    switch (cell.solver) {
      case SolverKind::kBal: {
        BalSolverConfig cfg;
        cfg.eps = cell.eps;
        cfg.eta_override = cell.eta;
        cfg.seed = r.seed;
        const SolveReport rep = ammc_bal(inst.graph, cfg);
        r.eta = rep.eta;
        r.passes = rep.passes;
        r.wall_ms = rep.wall_ms;
        r.err_vs_exact = rep.cycle ? rep.mean - inst.mu : std::numeric_limits<double>::quiet_NaN();
        break;
      }
      case SolverKind::kArea: {
        const SolveReport rep = ammc_area(inst.graph, {cell.eps, spec.area_options});
        r.passes = rep.passes;
        r.wall_ms = rep.wall_ms;
        r.err_vs_exact = rep.cycle ? rep.mean - inst.mu : std::numeric_limits<double>::quiet_NaN();
        break;
      }
      case SolverKind::kKarp: {
        const auto started = std::chrono::steady_clock::now();
        const MmcResult exact = karp_mmc(inst.graph);
        r.wall_ms = elapsed_ms(started);
        r.passes = r.n;  // one sweep over the edges per DP layer
        r.err_vs_exact = exact.cycle.mean - inst.mu;
        break;
      }
    }
  });
  return rows;
}

std::vector<BenchRecord> run_eta_sweep(const SweepSpec& spec) {
  if (spec.etas.empty()) throw PreconditionViolation("eta list is empty");
  if (spec.seeds.empty()) throw PreconditionViolation("seed list is empty");
  if (!(spec.pass_budget > 0.0)) throw PreconditionViolation("pass budget must be positive");
  const PlantedInstance inst = gen_arbitrage_like(spec.n, spec.instance_seed);
  const WeightedDigraph& g = inst.graph;
  const double mu = karp_mmc(g).mu;
  const int d_tilde = adiam(g).d_tilde;

  std::vector<BenchRecord> rows(spec.etas.size() * spec.seeds.size());
  parallel_for(rows.size(), [&](std::size_t k) {
    const double eta = spec.etas[k / spec.seeds.size()];
    const std::uint64_t seed = spec.seeds[k % spec.seeds.size()];
    const auto started = std::chrono::steady_clock::now();
    const BalanceProblem prob(g, eta, spec.delta);
    OsborneOptions opts;
    opts.work_cap = spec.pass_budget * g.num_edges();
    const BalanceResult bal = random_osborne(prob, seed, opts);
    const BalancedFlow p = build_balanced_flow(bal.x, prob);
    const EdgeFlow f = round_circ(g, p.p);
    BenchRecord& r = rows[k];
    r.n = g.num_vertices();
    r.m = g.num_edges();
    r.d_tilde = d_tilde;
    r.solver = "bal";
    r.eps = 2.5 * std::log(static_cast<double>(std::max(g.num_edges(), 2))) / eta;
    r.eta = eta;
    r.passes = bal.passes;
    r.wall_ms = elapsed_ms(started);
    r.err_vs_exact = lp_cost(g, f) - mu;
    r.seed = seed;
  });
  return rows;
}

}  // namespace mmc::cli
