#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mmc/graph.hpp"
#include "mmc/solver_area.hpp"

namespace mmc::cli {

enum class SolverKind { kBal, kArea, kKarp };

SolverKind parse_solver(const std::string& name);
const char* to_string(SolverKind s);

// Instance families understood by gen/bench.
struct GeneratorSpec {
  std::string name = "arbitrage";  // arbitrage | random | complete
  double density = 0.1;            // random: extra edges as a fraction of n(n-1)
  double w_lo = -1.0;
  double w_hi = 1.0;
};

WeightedDigraph generate(const GeneratorSpec& gen, int n, std::uint64_t seed);

struct ExperimentSpec {
  GeneratorSpec generator;
  std::vector<int> sizes;
  std::vector<SolverKind> solvers;
  std::vector<double> eps_list;
  std::vector<double> eta_list;  // empty entry list means the default eta
  std::vector<std::uint64_t> seeds;
  std::string out_path;
  AreaOptions area_options;

  // Throws PreconditionViolation on an empty list or an invalid value.
  void validate() const;
};

struct BenchRecord {
  int n = 0;
  int m = 0;
  int d_tilde = 0;
  std::string solver;
  double eps = 0.0;
  double eta = 0.0;
  double passes = 0.0;
  double wall_ms = 0.0;
  double err_vs_exact = 0.0;
  std::uint64_t seed = 0;
};

inline constexpr const char* kCsvHeader =
    "n,m,d_tilde,solver,eps,eta,passes,wall_ms,err_vs_exact,seed";

void write_csv(std::ostream& out, std::span<const BenchRecord> rows);

// Worker count from MMC_THREADS (default: hardware concurrency, at least 1).
int worker_threads();

// One row per (size, seed, solver, eps, eta) cell, in that nesting order
// regardless of how many workers run the cells.
std::vector<BenchRecord> run_bench(const ExperimentSpec& spec);

struct SweepSpec {
  int n = 16;
  std::uint64_t instance_seed = 1;
  std::vector<double> etas{8, 16, 32, 64, 128};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  double pass_budget = 2000.0;
  double delta = 1e-6;
};

// Balancing at each eta under a shared pass budget on one planted instance.
// err_vs_exact is the LP suboptimality <F, W> - mu of the circulation
// obtained by rounding the balanced flow (before cycle extraction).
std::vector<BenchRecord> run_eta_sweep(const SweepSpec& spec);

}  // namespace mmc::cli
