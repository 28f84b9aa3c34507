#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "conedist/errors.hpp"
#include "conedist/types.hpp"

namespace conedist {

// Problem datum: a finite set of generators in the nonnegative orthant and a
// nonzero nonnegative target point. The feasible set of the distance problem
// is the convex cone spanned by the generators.
struct Instance {
  std::vector<Vector> generators;
  Vector target;

  std::size_t dimension() const { return static_cast<std::size_t>(target.size()); }
  std::size_t num_generators() const { return generators.size(); }
};

// Checks the structural invariants: a shared dimension, finite nonnegative
// entries, a nonzero target, and at least one nonzero generator. Throws
// InputError naming the offending item.
inline void validate_instance(const Instance& instance) {
  const Eigen::Index n = instance.target.size();
  if (n == 0) throw InputError("instance: target has dimension 0");
  if (!instance.target.allFinite()) throw InputError("instance: target has a non-finite entry");
  if (!(instance.target.array() >= 0.0).all()) throw InputError("instance: target has a negative entry");
  if (instance.target.isZero(0.0)) throw InputError("instance: target is the zero vector");
  if (instance.generators.empty()) throw InputError("instance: generator set is empty");
  bool any_nonzero = false;
  for (std::size_t i = 0; i < instance.generators.size(); ++i) {
    const Vector& y = instance.generators[i];
    if (y.size() != n) {
      throw InputError("instance: generator " + std::to_string(i) + " has dimension " +
                       std::to_string(y.size()) + ", expected " + std::to_string(n));
    }
    if (!y.allFinite()) {
      throw InputError("instance: generator " + std::to_string(i) + " has a non-finite entry");
    }
    if (!(y.array() >= 0.0).all()) {
      throw InputError("instance: generator " + std::to_string(i) + " has a negative entry");
    }
    if (!y.isZero(0.0)) any_nonzero = true;
  }
  if (!any_nonzero) throw InputError("instance: every generator is the zero vector");
}

}  // namespace conedist
