#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "conedist/instance.hpp"
#include "conedist/lmo.hpp"
#include "conedist/slice.hpp"

namespace conedist {

enum class StepRule { ExactLineSearch, Diminishing };

struct SolverConfig {
  // Stop once the duality gap falls to gap_tolerance * (target.target).
  double gap_tolerance = 1e-8;
  // Hard cap on oracle calls; defaults to 10 * dimension + 1000.
  std::optional<std::size_t> max_iterations;
  StepRule step_rule = StepRule::ExactLineSearch;
  bool record_history = false;
  // Relative drift of target.z off the slice that counts as a failure.
  double slice_drift_tolerance = 1e-6;
  // Iterate entries in [-negative_entry_tolerance, 0) are rounded up to 0;
  // anything lower is a failure.
  double negative_entry_tolerance = 1e-12;
};

enum class SolveStatus { Converged, MaxIterations, TargetUnreachable };

// Weight of one generator in the cone combination that realizes z_star.
struct SupportEntry {
  std::size_t index = 0;
  double coefficient = 0.0;
};

struct IterationRecord {
  double objective = 0.0;  // squared distance of the iterate to the target
  double gap = 0.0;        // duality gap at the iterate, clamped to >= 0
};

struct Solution {
  SolveStatus status = SolveStatus::TargetUnreachable;
  Vector z_star;                     // nearest cone point
  std::optional<Vector> z_slice;     // terminal iterate on the slice, if any
  double distance = 0.0;
  std::size_t iterations = 0;        // number of oracle calls
  double final_gap = 0.0;
  std::optional<BoundCertificate> certificate;
  std::vector<SupportEntry> support;
  std::vector<IterationRecord> history;
};

// Lift of the first generator that has positive inner product with the target.
inline Vector initial_point(const Instance& instance) {
  const FeasibilityReport report = check_reachability(instance);
  if (!report.reachable) {
    throw PreconditionError("initial_point: no generator has positive inner product with the target");
  }
  return lift_to_slice(instance.generators[*report.witness_index], instance.target);
}

// Exact minimizer of ||z + gamma * (s - z) - target||^2 over gamma in [0, 1].
// Returns 0 when s coincides with z (within 1e-14 relative).
inline double line_search(const Vector& z, const Vector& s, const Vector& target) {
  if (z.size() != s.size() || z.size() != target.size()) {
    throw InputError("line_search: dimension mismatch");
  }
  if (!z.allFinite() || !s.allFinite() || !target.allFinite()) {
    throw InputError("line_search: non-finite entry");
  }
  const Vector direction = s - z;
  const double denom = direction.squaredNorm();
  const double scale = std::max(z.squaredNorm(), s.squaredNorm());
  if (denom <= 1e-28 * scale) return 0.0;
  const double gamma = (target - z).dot(direction) / denom;
  return std::clamp(gamma, 0.0, 1.0);
}

namespace detail {

// One update step with the feasibility clamp: entries pushed slightly below
// zero by rounding are snapped back, larger violations abort the solve.
inline void fw_step(Vector& z, const Vector& s, double gamma, double negative_tolerance) {
  z += gamma * (s - z);
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    const double e = z[j];
    if (e < 0.0) {
      if (e < -negative_tolerance) {
        throw NumericalError("solve: iterate entry " + std::to_string(j) + " fell to " +
                             std::to_string(e) + ", beyond the clamp tolerance");
      }
      z[j] = 0.0;
    }
  }
}

}  // namespace detail

// Distance from the target to the cone of the generators, via Frank-Wolfe on
// the hyperplane slice {z >= 0 : target.z = target.target} restricted to the
// hull of the lifted generators. The terminal slice iterate is scaled back to
// the nearest point of its ray, which realizes the cone distance once the gap
// is small. Unreachable targets short-circuit to the origin answer.
inline Solution solve(const Instance& instance, const SolverConfig& config = {}) {
  validate_instance(instance);
  if (!(config.gap_tolerance > 0.0)) throw InputError("solve: gap_tolerance must be positive");
  if (config.max_iterations && *config.max_iterations == 0) {
    throw InputError("solve: max_iterations must be at least 1");
  }

  const Vector& target = instance.target;
  const std::size_t n = instance.dimension();
  const std::size_t m = instance.num_generators();
  const double ztz = target.squaredNorm();

  std::vector<double> zy(m);
  std::optional<std::size_t> witness;
  for (std::size_t i = 0; i < m; ++i) {
    zy[i] = target.dot(instance.generators[i]);
    if (!witness && zy[i] > 0.0) witness = i;
  }

  Solution solution;
  if (!witness) {
    solution.status = SolveStatus::TargetUnreachable;
    solution.z_star = Vector::Zero(static_cast<Eigen::Index>(n));
    solution.distance = target.norm();
    return solution;
  }

  double rho = -1.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (zy[i] > 0.0) {
      rho = std::max(rho, instance.generators[i].squaredNorm() / (zy[i] * zy[i]));
    }
  }
  solution.certificate = BoundCertificate{rho, 2.0 * rho * ztz * ztz};

  const std::size_t max_iterations = config.max_iterations.value_or(10 * n + 1000);
  const double gap_threshold = config.gap_tolerance * ztz;
  const double drift_threshold = config.slice_drift_tolerance * ztz;

  Vector z = (ztz / zy[*witness]) * instance.generators[*witness];
  std::vector<double> weights(m, 0.0);
  weights[*witness] = 1.0;

  solution.status = SolveStatus::MaxIterations;
  double last_gap = 0.0;
  std::size_t calls = 0;
  for (std::size_t k = 0; k < max_iterations; ++k) {
    const Vector gradient = z - target;
    const detail::LmoScan scan = detail::lmo_scan(instance.generators, zy, ztz, gradient);
    const Vector s = (ztz / zy[scan.index]) * instance.generators[scan.index];
    const double gap = gradient.dot(z - s);
    ++calls;
    last_gap = gap;
    if (config.record_history) {
      solution.history.push_back(IterationRecord{gradient.squaredNorm(), std::max(gap, 0.0)});
    }
    if (gap <= gap_threshold) {
      solution.status = SolveStatus::Converged;
      break;
    }
    const double gamma = config.step_rule == StepRule::ExactLineSearch
                             ? line_search(z, s, target)
                             : 2.0 / (static_cast<double>(k) + 2.0);
    detail::fw_step(z, s, gamma, config.negative_entry_tolerance);
    const double drift = std::abs(target.dot(z) - ztz);
    if (drift > drift_threshold) {
      throw NumericalError("solve: iterate drifted off the slice by " + std::to_string(drift));
    }
    for (double& w : weights) w *= (1.0 - gamma);
    weights[scan.index] += gamma;
  }
  solution.iterations = calls;
  solution.final_gap = std::max(last_gap, 0.0);

  const double scale = ztz / z.squaredNorm();
  solution.z_slice = z;
  solution.z_star = scale * z;
  solution.distance = (solution.z_star - target).norm();

  // The running weights express the iterate as a convex combination of lifted
  // generators; scaling back turns them into cone coefficients of z_star.
  for (std::size_t i = 0; i < m; ++i) {
    if (weights[i] > 0.0 && zy[i] > 0.0) {
      const double mu = scale * weights[i] * (ztz / zy[i]);
      if (mu > 0.0) solution.support.push_back(SupportEntry{i, mu});
    }
  }
  return solution;
}

}  // namespace conedist
