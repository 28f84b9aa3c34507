// Command-line front end: solve instance documents, generate random
// instances, run benchmark grids, verify answers against the enumeration
// oracle, and print slice geometry.
//
// Exit codes: 0 success (including unreachable targets and failed bench
// trials, which are data), 2 solve stopped on the iteration cap or
// verification failed, 1 bad input or usage.

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "conedist/conedist.hpp"

namespace {

struct SolveFlags {
  double gap_tolerance = 1e-8;
  std::optional<std::size_t> max_iterations;
  std::string step = "exact";
  bool quiet = true;
};

conedist::SolverConfig make_config(const SolveFlags& flags, bool record_history) {
  conedist::SolverConfig config;
  config.gap_tolerance = flags.gap_tolerance;
  config.max_iterations = flags.max_iterations;
  config.step_rule = flags.step == "diminishing" ? conedist::StepRule::Diminishing
                                                 : conedist::StepRule::ExactLineSearch;
  config.record_history = record_history;
  return config;
}

void add_solver_flags(CLI::App* cmd, SolveFlags& flags) {
  cmd->add_option("--gap-tol", flags.gap_tolerance,
                  "Stop once the duality gap falls to this fraction of target.target");
  cmd->add_option("--max-iters", flags.max_iterations,
                  "Cap on oracle calls (default 10n + 1000)");
  cmd->add_option("--step", flags.step, "Step rule")
      ->check(CLI::IsMember({"exact", "diminishing"}));
  cmd->add_flag("--quiet", flags.quiet,
                "Suppress the summary line on stderr (default true; pass --quiet=false to see it)");
}

conedist::TargetMode parse_target_mode(const std::string& mode) {
  if (mode == "in_cone") return conedist::TargetMode::InCone;
  if (mode == "orthogonal_mix") return conedist::TargetMode::OrthogonalMix;
  return conedist::TargetMode::RandomNonneg;
}

// Data goes to --out when given, stdout otherwise.
void write_output(const std::string& out_path, const std::function<void(std::ostream&)>& writer) {
  if (out_path.empty()) {
    writer(std::cout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw conedist::InputError(out_path + ": cannot open for writing");
  writer(out);
}

int run_solve(const std::string& in_path, const std::string& out_path,
              const std::string& history_path, const SolveFlags& flags) {
  const conedist::InstanceDocument doc = conedist::read_instance_document(in_path);
  const conedist::Instance instance = conedist::to_instance(doc);
  const conedist::Solution solution =
      conedist::solve(instance, make_config(flags, !history_path.empty()));
  write_output(out_path,
               [&](std::ostream& out) { conedist::write_solution_document(out, solution); });
  if (!history_path.empty()) {
    std::ofstream out(history_path, std::ios::binary);
    if (!out) throw conedist::InputError(history_path + ": cannot open for writing");
    conedist::write_history_csv(out, solution.history);
  }
  if (!flags.quiet) {
    std::cerr << "status=" << conedist::status_string(solution.status)
              << " distance=" << conedist::format_double(solution.distance)
              << " iterations=" << solution.iterations
              << " final_gap=" << conedist::format_double(solution.final_gap) << '\n';
  }
  return solution.status == conedist::SolveStatus::MaxIterations ? 2 : 0;
}

int run_generate(const conedist::GenParams& params, const std::string& out_path) {
  const conedist::Instance instance = conedist::generate(params);
  conedist::InstanceDocument doc;
  doc.n = params.n;
  doc.target = instance.target;
  doc.points = instance.generators;
  write_output(out_path, [&](std::ostream& out) { conedist::write_instance_document(out, doc); });
  return 0;
}

int run_bench(const std::vector<std::size_t>& ns, std::size_t m,
              const std::vector<std::size_t>& ncs, const std::vector<double>& cfs,
              std::size_t trials, std::uint64_t seed, const std::string& mode, std::size_t jobs,
              const SolveFlags& flags, const std::string& out_path) {
  const std::vector<conedist::GenParams> grid =
      conedist::make_grid(ns, m, ncs, cfs, seed, parse_target_mode(mode));
  const std::vector<conedist::BenchRow> rows =
      conedist::run_benchmark(grid, trials, make_config(flags, false), jobs);
  write_output(out_path, [&](std::ostream& out) { conedist::write_bench_csv(out, rows); });
  return 0;
}

int run_verify(const std::string& in_path, double tolerance, const SolveFlags& flags,
               const std::string& out_path) {
  const conedist::InstanceDocument doc = conedist::read_instance_document(in_path);
  const conedist::Instance instance = conedist::to_instance(doc);
  const conedist::Solution solution = conedist::solve(instance, make_config(flags, false));
  const conedist::VerificationReport report =
      conedist::verify_solution(solution, instance, tolerance);
  write_output(out_path,
               [&](std::ostream& out) { conedist::write_verification_document(out, report); });
  if (!flags.quiet) {
    std::cerr << "verify=" << (report.pass ? "pass" : "fail")
              << " oracle_distance_sq=" << conedist::format_double(report.oracle_distance_sq)
              << '\n';
  }
  return report.pass ? 0 : 2;
}

int run_geometry(const std::string& in_path, const std::string& out_path) {
  const conedist::InstanceDocument doc = conedist::read_instance_document(in_path);
  const conedist::SliceGeometry geometry = conedist::slice_geometry(doc.target);
  write_output(out_path,
               [&](std::ostream& out) { conedist::write_geometry_document(out, geometry); });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Euclidean distance from a nonnegative point to the cone of a finite point set"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "0.1.0");

  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance document");
  std::string solve_in, solve_out, solve_history;
  SolveFlags solve_flags;
  solve_cmd->add_option("instance", solve_in, "Instance document (JSON)")->required();
  solve_cmd->add_option("--out", solve_out, "Write the result document here instead of stdout");
  solve_cmd->add_option("--history", solve_history,
                        "Record per-iteration objective/gap and write them here as CSV");
  add_solver_flags(solve_cmd, solve_flags);

  auto* gen_cmd = app.add_subcommand("generate", "Generate a clustered random instance");
  conedist::GenParams gen_params;
  std::string gen_mode = "random_nonneg", gen_out;
  gen_cmd->add_option("--n", gen_params.n, "Dimension")->required();
  gen_cmd->add_option("--m", gen_params.m, "Number of generators")->required();
  gen_cmd->add_option("--nc", gen_params.num_clusters, "Number of clusters (default 1)");
  gen_cmd->add_option("--cf", gen_params.cluster_coefficient,
                      "Cluster coefficient (default 0: independent uniform points)");
  gen_cmd->add_option("--seed", gen_params.seed, "RNG seed")->required();
  gen_cmd->add_option("--target-mode", gen_mode, "Target construction")
      ->check(CLI::IsMember({"random_nonneg", "in_cone", "orthogonal_mix"}));
  gen_cmd->add_option("--out", gen_out, "Write the instance document here instead of stdout");

  auto* bench_cmd = app.add_subcommand("bench", "Average solver metrics over a seeded grid");
  std::vector<std::size_t> bench_ns, bench_ncs{1};
  std::vector<double> bench_cfs{0.0};
  std::size_t bench_m = 1000, bench_trials = 10, bench_jobs = 1;
  std::uint64_t bench_seed = 0;
  std::string bench_mode = "random_nonneg", bench_out;
  SolveFlags bench_flags;
  bench_cmd->add_option("--n", bench_ns, "Dimensions (comma separated)")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--m", bench_m, "Generators per instance (default 1000)");
  bench_cmd->add_option("--nc", bench_ncs, "Cluster counts (default 1)")->delimiter(',');
  bench_cmd->add_option("--cf", bench_cfs, "Cluster coefficients (default 0)")->delimiter(',');
  bench_cmd->add_option("--trials", bench_trials, "Trials per cell (default 10)");
  bench_cmd->add_option("--seed", bench_seed, "Base RNG seed")->required();
  bench_cmd->add_option("--target-mode", bench_mode, "Target construction")
      ->check(CLI::IsMember({"random_nonneg", "in_cone", "orthogonal_mix"}));
  bench_cmd->add_option("--jobs", bench_jobs, "Worker threads (default 1)");
  bench_cmd->add_option("--out", bench_out, "Write the CSV table here instead of stdout");
  add_solver_flags(bench_cmd, bench_flags);

  auto* verify_cmd =
      app.add_subcommand("verify", "Solve and cross-check against the enumeration oracle");
  std::string verify_in, verify_out;
  double verify_tol = 1e-6;
  SolveFlags verify_flags;
  verify_cmd->add_option("instance", verify_in, "Instance document (JSON)")->required();
  verify_cmd->add_option("--tol", verify_tol, "Verification tolerance (default 1e-6)");
  verify_cmd->add_option("--out", verify_out, "Write the report here instead of stdout");
  add_solver_flags(verify_cmd, verify_flags);

  auto* geom_cmd =
      app.add_subcommand("geometry", "Print the slice polyhedron of an instance's target");
  std::string geom_in, geom_out;
  geom_cmd->add_option("instance", geom_in, "Instance document (JSON)")->required();
  geom_cmd->add_option("--out", geom_out, "Write the geometry document here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(solve_in, solve_out, solve_history, solve_flags);
    if (gen_cmd->parsed()) {
      gen_params.target_mode = parse_target_mode(gen_mode);
      return run_generate(gen_params, gen_out);
    }
    if (bench_cmd->parsed()) {
      return run_bench(bench_ns, bench_m, bench_ncs, bench_cfs, bench_trials, bench_seed,
                       bench_mode, bench_jobs, bench_flags, bench_out);
    }
    if (verify_cmd->parsed()) return run_verify(verify_in, verify_tol, verify_flags, verify_out);
    if (geom_cmd->parsed()) return run_geometry(geom_in, geom_out);
  } catch (const conedist::Error& error) {
    std::cerr << "conedist: " << error.what() << '\n';
    return 1;
  }
  return 0;
}
