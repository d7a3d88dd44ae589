#include "mmc_cli/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>

#include "mmc/baselines.hpp"
#include "mmc/errors.hpp"
#include "mmc/generators.hpp"
#include "mmc/solve_report.hpp"
#include "mmc/solver_area.hpp"
#include "mmc/solver_bal.hpp"

namespace mmc::cli {
namespace {

// Writes to out_path, or to `fallback` when the path is empty.
template <typename Fn>
void with_output(const std::string& out_path, std::ostream& fallback, Fn&& write) {
  if (out_path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(out_path);
  if (!file) throw Error("cannot open '" + out_path + "' for writing");
  write(file);
  file.flush();
  if (!file) throw Error("write to '" + out_path + "' failed");
}

ComponentSolver component_solver(const SolveOptions& opts) {
  switch (opts.solver) {
    case SolverKind::kBal: {
      BalSolverConfig cfg;
      cfg.eps = opts.eps;
      cfg.eta_override = opts.eta;
      cfg.seed = opts.seed;
      cfg.memory_mode = opts.memory_mode;
      return [cfg](const WeightedDigraph& h) { return ammc_bal(h, cfg); };
    }
    case SolverKind::kArea: {
      const AreaSolverConfig cfg{opts.eps, opts.area_options};
      return [cfg](const WeightedDigraph& h) { return ammc_area(h, cfg); };
    }
    case SolverKind::kKarp:
      return [](const WeightedDigraph& h) {
        SolveReport rep;
        const MmcResult exact = karp_mmc(h);
        rep.cycle = exact.cycle;
        rep.mean = exact.cycle.mean;
        rep.lower_bound = exact.mu;
        rep.passes = h.num_vertices();
        return rep;
      };
  }
  throw PreconditionViolation("unknown solver");
}

}  // namespace

int cmd_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err) {
  WeightedDigraph g;
  try {
    g = read_edge_list_file(opts.path);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  const GlobalSolveReport global = solve_all_components(g, component_solver(opts));
  if (!global.best) {
    out << "no cycle\n";
    return kExitNoCycle;
  }
  const SolveReport& rep = global.components[global.best_component].report;
  double passes = 0.0;
  for (const ComponentReport& c : global.components) passes += c.report.passes;

  out << std::setprecision(12);
  out << "cycle:";
  for (Vertex v : global.best->vertices) out << ' ' << v;
  out << '\n';
  out << "mean: " << global.best->mean << '\n';
  if (opts.solver == SolverKind::kBal) out << "lower_bound: " << rep.lower_bound << '\n';
  out << "passes: " << passes << '\n';
  if (rep.status != SolveStatus::kOk) out << "status: " << to_string(rep.status) << '\n';
  return kExitOk;
}

int cmd_gen(const GenOptions& opts, std::ostream& out, std::ostream& /*err*/) {
  const WeightedDigraph g = generate(opts.generator, opts.n, opts.seed);
  with_output(opts.out_path, out, [&](std::ostream& os) { write_edge_list(os, g); });
  return kExitOk;
}

int cmd_bench(const ExperimentSpec& spec, std::ostream& out, std::ostream& /*err*/) {
  const std::vector<BenchRecord> rows = run_bench(spec);
  with_output(spec.out_path, out, [&](std::ostream& os) { write_csv(os, rows); });
  return kExitOk;
}

int cmd_sweep_eta(const SweepSpec& spec, const std::string& out_path, std::ostream& out,
                  std::ostream& /*err*/) {
  const std::vector<BenchRecord> rows = run_eta_sweep(spec);
  with_output(out_path, out, [&](std::ostream& os) { write_csv(os, rows); });
  return kExitOk;
}

int cmd_reduce_demo(const ReduceOptions& opts, std::ostream& out, std::ostream& err) {
  WeightedDigraph g;
  try {
    g = opts.path.empty() ? random_unit_weight_no_negative_cycle(opts.n, opts.seed)
                          : read_edge_list_file(opts.path);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  const ReductionResult r = reduction_demo(g, opts.source, opts.eps, opts.seed);
  out << "source: " << opts.source << '\n';
  out << "dist:";
  for (std::int64_t d : r.dist) {
    if (d == std::numeric_limits<std::int64_t>::max()) {
      out << " inf";
    } else {
      out << ' ' << d;
    }
  }
  out << '\n';
  out << "min_reduced_weight: " << r.min_reduced_weight << '\n';
  out << "initial_excess: " << r.initial_excess << '\n';
  out << "processed_vertices: " << r.stats.processed_vertices << '\n';
  out << "relaxations: " << r.stats.relaxations << '\n';
  return kExitOk;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Approximate min-mean-cycle solvers, baselines and experiments", "mmc"};
  app.require_subcommand(1);

  const std::map<std::string, MemoryMode> memory_modes{{"dense", MemoryMode::kDense},
                                                       {"oracle", MemoryMode::kOracle}};
  auto solver_check = CLI::IsMember({"bal", "area", "karp"});
  auto gen_check = CLI::IsMember({"arbitrage", "random", "complete"});

  // solve
  SolveOptions solve;
  std::string solve_solver = "bal";
  double solve_eta = 0.0;
  auto* solve_cmd = app.add_subcommand("solve", "Approximate the min-mean cycle of an edge-list file");
  solve_cmd->add_option("path", solve.path, "Edge-list file")->required();
  solve_cmd->add_option("--solver", solve_solver, "bal | area | karp")
      ->check(solver_check)
      ->capture_default_str();
  solve_cmd->add_option("--eps", solve.eps, "Additive accuracy")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  solve_cmd->add_option("--eta", solve_eta, "Regularization strength (bal; default from eps)")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--seed", solve.seed, "Random seed")->capture_default_str();
  solve_cmd->add_option("--memory-mode", solve.memory_mode, "dense | oracle (bal)")
      ->transform(CLI::CheckedTransformer(memory_modes, CLI::ignore_case));
  solve_cmd->add_option("--entropy-weight", solve.area_options.entropy_weight,
                        "Entropy weight of the area regularizer (area)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  solve_cmd->add_option("--step-multiplier", solve.area_options.step_multiplier,
                        "Step size multiplier (area)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bool solve_tuned = false;
  solve_cmd->add_flag("--tuned", solve_tuned,
                      "Tuned area profile; explicit --entropy-weight/--step-multiplier still apply");

  // gen
  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a generated instance as an edge list");
  gen_cmd->add_option("--generator", gen.generator.name, "arbitrage | random | complete")
      ->check(gen_check)
      ->capture_default_str();
  gen_cmd->add_option("-n", gen.n, "Vertex count")->check(CLI::Range(2, 1 << 20))->capture_default_str();
  gen_cmd->add_option("--density", gen.generator.density, "Extra-edge fraction (random)")
      ->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out_path, "Output file (default stdout)");

  // bench
  ExperimentSpec bench;
  std::vector<std::string> bench_solvers{"bal"};
  bench.eps_list = {0.1};
  bench.seeds = {1, 2, 3};
  auto* bench_cmd = app.add_subcommand("bench", "Run solvers over generated instances, emit CSV");
  bench_cmd->add_option("--generator", bench.generator.name, "arbitrage | random | complete")
      ->check(gen_check)
      ->capture_default_str();
  bench_cmd->add_option("--sizes", bench.sizes, "Vertex counts")->delimiter(',')->required();
  bench_cmd->add_option("--solver", bench_solvers, "Solvers")
      ->delimiter(',')
      ->check(solver_check);
  bench_cmd->add_option("--eps", bench.eps_list, "Accuracy values")->delimiter(',');
  bench_cmd->add_option("--eta", bench.eta_list, "Eta values for bal (default from eps)")
      ->delimiter(',');
  bench_cmd->add_option("--seed", bench.seeds, "Seeds")->delimiter(',');
  bench_cmd->add_option("--density", bench.generator.density, "Extra-edge fraction (random)")
      ->check(CLI::Range(0.0, 1.0));
  bench_cmd->add_option("--out", bench.out_path, "CSV file (default stdout)");
  bool bench_tuned = false;
  bench_cmd->add_flag("--tuned", bench_tuned, "Tuned area profile instead of theory constants");

  // sweep-eta
  SweepSpec sweep;
  std::string sweep_out;
  auto* sweep_cmd =
      app.add_subcommand("sweep-eta", "LP suboptimality vs eta at a fixed pass budget, emit CSV");
  sweep_cmd->add_option("-n", sweep.n, "Vertex count")->check(CLI::Range(2, 1 << 16))->capture_default_str();
  sweep_cmd->add_option("--instance-seed", sweep.instance_seed, "Instance seed")
      ->capture_default_str();
  sweep_cmd->add_option("--eta", sweep.etas, "Eta values")->delimiter(',');
  sweep_cmd->add_option("--seed", sweep.seeds, "Balancing seeds")->delimiter(',');
  sweep_cmd->add_option("--passes", sweep.pass_budget, "Pass budget per run")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_cmd->add_option("--out", sweep_out, "CSV file (default stdout)");

  // reduce-demo
  ReduceOptions reduce;
  auto* reduce_cmd = app.add_subcommand(
      "reduce-demo", "Shortest paths via an approximate min-mean-cycle potential");
  reduce_cmd->add_option("path", reduce.path,
                         "Integer-weighted edge list (default: random {-1,0,1} complete graph)");
  reduce_cmd->add_option("-n", reduce.n, "Vertex count of the random graph")
      ->check(CLI::Range(2, 1 << 12))
      ->capture_default_str();
  reduce_cmd->add_option("--source", reduce.source, "Source vertex")->capture_default_str();
  reduce_cmd->add_option("--eps", reduce.eps, "Accuracy of the potential")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  reduce_cmd->add_option("--seed", reduce.seed, "Random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
  }

  try {
    if (*solve_cmd) {
      solve.solver = parse_solver(solve_solver);
      if (solve_cmd->count("--eta") > 0) solve.eta = solve_eta;
      if (solve_tuned) {
        AreaOptions tuned = AreaOptions::tuned();
        if (solve_cmd->count("--entropy-weight") > 0)
          tuned.entropy_weight = solve.area_options.entropy_weight;
        if (solve_cmd->count("--step-multiplier") > 0)
          tuned.step_multiplier = solve.area_options.step_multiplier;
        solve.area_options = tuned;
      }
      return cmd_solve(solve, out, err);
    }
    if (*gen_cmd) return cmd_gen(gen, out, err);
    if (*bench_cmd) {
      bench.solvers.clear();
      for (const std::string& s : bench_solvers) bench.solvers.push_back(parse_solver(s));
      if (bench_tuned) bench.area_options = AreaOptions::tuned();
      return cmd_bench(bench, out, err);
    }
    if (*sweep_cmd) return cmd_sweep_eta(sweep, sweep_out, out, err);
    if (*reduce_cmd) return cmd_reduce_demo(reduce, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace mmc::cli
