#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "conedist/generator.hpp"
#include "conedist/solver.hpp"

namespace conedist {

// One cell of a benchmark table: generator knobs plus trial averages.
// Everything except mean_wall_time_s is deterministic in the grid and seeds.
struct BenchRow {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t num_clusters = 1;
  double cluster_coefficient = 0.0;
  std::size_t trials = 0;
  double mean_iterations = 0.0;
  double mean_distance = 0.0;
  double mean_wall_time_s = 0.0;
  std::size_t failures = 0;  // trials that stopped on the iteration cap
};

// Cartesian grid in row-major order (n outer, num_clusters, then
// cluster_coefficient). Cell c draws from base_seed + 1000003 * c so trial
// seed ranges never collide across cells.
inline std::vector<GenParams> make_grid(const std::vector<std::size_t>& ns, std::size_t m,
                                        const std::vector<std::size_t>& ncs,
                                        const std::vector<double>& cfs, std::uint64_t base_seed,
                                        TargetMode mode = TargetMode::RandomNonneg) {
  std::vector<GenParams> grid;
  grid.reserve(ns.size() * ncs.size() * cfs.size());
  std::uint64_t cell = 0;
  for (std::size_t n : ns) {
    for (std::size_t nc : ncs) {
      for (double cf : cfs) {
        GenParams params;
        params.n = n;
        params.m = m;
        params.num_clusters = nc;
        params.cluster_coefficient = cf;
        params.seed = base_seed + 1000003ull * cell++;
        params.target_mode = mode;
        grid.push_back(params);
      }
    }
  }
  return grid;
}

// Runs trials_per_cell seeded instances per cell (trial t uses the cell seed
// plus t) and averages oracle-call counts, distances, and wall-clock solve
// time. Rows come back in grid order regardless of jobs; trials that hit the
// iteration cap are counted in `failures`, never dropped.
inline std::vector<BenchRow> run_benchmark(const std::vector<GenParams>& grid,
                                           std::size_t trials_per_cell,
                                           const SolverConfig& config, std::size_t jobs = 1) {
  if (trials_per_cell == 0) throw InputError("run_benchmark: trials_per_cell must be at least 1");

  struct Trial {
    double iterations = 0.0;
    double distance = 0.0;
    double seconds = 0.0;
    bool failed = false;
  };
  std::vector<Trial> trials(grid.size() * trials_per_cell);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    while (true) {
      const std::size_t task = next.fetch_add(1);
      if (task >= trials.size()) break;
      try {
        GenParams params = grid[task / trials_per_cell];
        params.seed += task % trials_per_cell;
        const Instance instance = generate(params);
        const auto start = std::chrono::steady_clock::now();
        const Solution solution = solve(instance, config);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        trials[task] = Trial{static_cast<double>(solution.iterations), solution.distance,
                             elapsed.count(), solution.status == SolveStatus::MaxIterations};
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const std::size_t count = std::min(jobs, trials.size());
    pool.reserve(count);
    for (std::size_t j = 0; j < count; ++j) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<BenchRow> rows;
  rows.reserve(grid.size());
  for (std::size_t cell = 0; cell < grid.size(); ++cell) {
    BenchRow row;
    row.n = grid[cell].n;
    row.m = grid[cell].m;
    row.num_clusters = grid[cell].num_clusters;
    row.cluster_coefficient = grid[cell].cluster_coefficient;
    row.trials = trials_per_cell;
    for (std::size_t t = 0; t < trials_per_cell; ++t) {
      const Trial& trial = trials[cell * trials_per_cell + t];
      row.mean_iterations += trial.iterations;
      row.mean_distance += trial.distance;
      row.mean_wall_time_s += trial.seconds;
      if (trial.failed) ++row.failures;
    }
    const double count = static_cast<double>(trials_per_cell);
    row.mean_iterations /= count;
    row.mean_distance /= count;
    row.mean_wall_time_s /= count;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace conedist
