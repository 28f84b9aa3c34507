#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "conedist/instance.hpp"

namespace conedist {

// Answer of the linear minimization step: the winning generator, its lift
// scale onto the slice, the lifted point, and the attained objective value.
struct LmoResult {
  std::size_t generator_index = 0;
  double lambda = 0.0;
  Vector point;
  double objective = 0.0;
};

namespace detail {

struct LmoScan {
  std::size_t index = 0;
  double objective = 0.0;
  bool found = false;
};

// Single pass over the candidates. zy caches target.y per generator; entries
// with zy <= 0 have no slice lift and are skipped. The objective of the lift
// is evaluated as ztz * (gradient.y) / zy without materializing the lifted
// point. Ties keep the smallest index, so any in-order partition of the index
// range reduces to the same answer as the sequential scan.
inline LmoScan lmo_scan(const std::vector<Vector>& generators, const std::vector<double>& zy,
                        double ztz, const Vector& gradient) {
  LmoScan best;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (!(zy[i] > 0.0)) continue;
    const double value = ztz * gradient.dot(generators[i]) / zy[i];
    if (!best.found || value < best.objective) best = LmoScan{i, value, true};
  }
  return best;
}

}  // namespace detail

// Minimizes gradient.s over the slice lifts of all generators. Returns
// nullopt when no generator has positive inner product with the target, i.e.
// the slice is not reachable from the generator set.
inline std::optional<LmoResult> solve_lmo(const Vector& gradient, const Instance& instance) {
  validate_instance(instance);
  if (gradient.size() != instance.target.size()) {
    throw InputError("solve_lmo: gradient has dimension " + std::to_string(gradient.size()) +
                     ", expected " + std::to_string(instance.target.size()));
  }
  if (!gradient.allFinite()) throw InputError("solve_lmo: gradient has a non-finite entry");
  const double ztz = instance.target.squaredNorm();
  std::vector<double> zy(instance.num_generators());
  for (std::size_t i = 0; i < zy.size(); ++i) zy[i] = instance.target.dot(instance.generators[i]);
  const detail::LmoScan scan = detail::lmo_scan(instance.generators, zy, ztz, gradient);
  if (!scan.found) return std::nullopt;
  const double lambda = ztz / zy[scan.index];
  return LmoResult{scan.index, lambda, lambda * instance.generators[scan.index], scan.objective};
}

// Frank-Wolfe duality gap gradient.(z - s); nonnegative up to rounding when s
// is the oracle answer at z.
inline double duality_gap(const Vector& z, const Vector& gradient, const Vector& lmo_point) {
  if (z.size() != gradient.size() || lmo_point.size() != z.size()) {
    throw InputError("duality_gap: dimension mismatch");
  }
  return gradient.dot(z - lmo_point);
}

}  // namespace conedist
