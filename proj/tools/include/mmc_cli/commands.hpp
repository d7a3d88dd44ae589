#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "mmc/solver_bal.hpp"
#include "mmc_cli/experiments.hpp"

namespace mmc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNoCycle = 2;

struct SolveOptions {
  std::string path;
  SolverKind solver = SolverKind::kBal;
  double eps = 0.1;
  std::optional<double> eta;
  std::uint64_t seed = 0;
  MemoryMode memory_mode = MemoryMode::kDense;
  AreaOptions area_options;
};

int cmd_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err);

struct GenOptions {
  GeneratorSpec generator;
  int n = 16;
  std::uint64_t seed = 0;
  std::string out_path;  // stdout when empty
};

int cmd_gen(const GenOptions& opts, std::ostream& out, std::ostream& err);

int cmd_bench(const ExperimentSpec& spec, std::ostream& out, std::ostream& err);

int cmd_sweep_eta(const SweepSpec& spec, const std::string& out_path, std::ostream& out,
                  std::ostream& err);

struct ReduceOptions {
  std::string path;  // when empty, a random {-1,0,1} complete graph on n vertices
  int n = 8;
  Vertex source = 0;
  double eps = 0.1;
  std::uint64_t seed = 0;
};

int cmd_reduce_demo(const ReduceOptions& opts, std::ostream& out, std::ostream& err);

// Parses argv with CLI11 and dispatches.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace mmc::cli
