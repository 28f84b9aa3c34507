#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "conedist/instance.hpp"

namespace conedist {

// Outcome of the reachability test. The nearest cone point is nonzero exactly
// when some generator has positive inner product with the target; the witness
// is the smallest such index.
struct FeasibilityReport {
  bool reachable = false;
  std::optional<std::size_t> witness_index;
};

// Vertices and extreme rays of the polyhedron {z >= 0 : target.z = target.target}.
// There is one vertex per positive target coordinate (a scaled unit vector)
// and one extreme ray per zero coordinate.
struct SliceGeometry {
  double target_norm_sq = 0.0;
  std::vector<Vector> vertices;
  std::vector<std::size_t> vertex_indices;  // coordinates with target[i] > 0
  std::vector<std::size_t> ray_indices;     // coordinates with target[i] == 0
};

// Compactness certificate for the restricted search region: every oracle
// answer has squared norm at most rho * (target.target)^2, so the squared
// diameter of the region is at most diam_sq_bound = 2 * rho * (target.target)^2.
struct BoundCertificate {
  double rho = 0.0;
  double diam_sq_bound = 0.0;

  // A-priori objective-error bound after k oracle calls.
  double gap_bound_at(std::size_t k) const {
    return 2.0 * diam_sq_bound / (static_cast<double>(k) + 2.0);
  }
};

// Inner products of nonnegative vectors are never negative, so "positive" is
// an exact sign test; no tolerance is involved.
inline FeasibilityReport check_reachability(const Instance& instance) {
  validate_instance(instance);
  for (std::size_t i = 0; i < instance.generators.size(); ++i) {
    if (instance.target.dot(instance.generators[i]) > 0.0) {
      return FeasibilityReport{true, i};
    }
  }
  return FeasibilityReport{false, std::nullopt};
}

// Scales y onto the slice: ((target.target) / (target.y)) * y.
// Requires target.y > 0; a point with target.y = 0 has no slice multiple.
inline Vector lift_to_slice(const Vector& y, const Vector& target) {
  if (y.size() != target.size()) {
    throw InputError("lift_to_slice: point has dimension " + std::to_string(y.size()) +
                     ", target has dimension " + std::to_string(target.size()));
  }
  if (!y.allFinite() || !target.allFinite()) {
    throw InputError("lift_to_slice: non-finite entry");
  }
  const double ty = target.dot(y);
  if (!(ty > 0.0)) {
    throw PreconditionError("lift_to_slice: target.y must be positive, got " + std::to_string(ty));
  }
  return (target.squaredNorm() / ty) * y;
}

// Maps a slice point to the nearest point of its ray to the target:
// ((target.target) / (z.z)) * z. The input must actually lie on the slice;
// drift beyond slice_tolerance (relative to target.target) is rejected.
inline Vector scale_back(const Vector& z_slice, const Vector& target, double slice_tolerance = 1e-9) {
  if (z_slice.size() != target.size()) {
    throw InputError("scale_back: point has dimension " + std::to_string(z_slice.size()) +
                     ", target has dimension " + std::to_string(target.size()));
  }
  if (!z_slice.allFinite() || !target.allFinite()) {
    throw InputError("scale_back: non-finite entry");
  }
  const double ztz = target.squaredNorm();
  if (ztz == 0.0) throw InputError("scale_back: target is the zero vector");
  const double znorm_sq = z_slice.squaredNorm();
  if (znorm_sq == 0.0) throw PreconditionError("scale_back: z_slice is the zero vector");
  const double drift = std::abs(target.dot(z_slice) - ztz);
  if (drift > slice_tolerance * ztz) {
    throw PreconditionError("scale_back: input is off the slice, |target.z - target.target| = " +
                            std::to_string(drift));
  }
  return (ztz / znorm_sq) * z_slice;
}

inline SliceGeometry slice_geometry(const Vector& target) {
  if (target.size() == 0) throw InputError("slice_geometry: target has dimension 0");
  if (!target.allFinite()) throw InputError("slice_geometry: target has a non-finite entry");
  if (!(target.array() >= 0.0).all()) throw InputError("slice_geometry: target has a negative entry");
  if (target.isZero(0.0)) throw InputError("slice_geometry: target is the zero vector");
  SliceGeometry geometry;
  geometry.target_norm_sq = target.squaredNorm();
  for (Eigen::Index i = 0; i < target.size(); ++i) {
    if (target[i] > 0.0) {
      Vector vertex = Vector::Zero(target.size());
      vertex[i] = geometry.target_norm_sq / target[i];
      geometry.vertices.push_back(std::move(vertex));
      geometry.vertex_indices.push_back(static_cast<std::size_t>(i));
    } else {
      geometry.ray_indices.push_back(static_cast<std::size_t>(i));
    }
  }
  return geometry;
}

// rho = max over generators with target.y > 0 of (y.y) / (target.y)^2. The
// maximum is scale invariant per generator, and it bounds the squared norm of
// every lifted oracle answer by rho * (target.target)^2.
inline BoundCertificate diameter_bound(const Instance& instance) {
  validate_instance(instance);
  const double ztz = instance.target.squaredNorm();
  double rho = -1.0;
  for (const Vector& y : instance.generators) {
    const double ty = instance.target.dot(y);
    if (ty > 0.0) rho = std::max(rho, y.squaredNorm() / (ty * ty));
  }
  if (rho < 0.0) {
    throw PreconditionError(
        "diameter_bound: no generator has positive inner product with the target");
  }
  return BoundCertificate{rho, 2.0 * rho * ztz * ztz};
}

}  // namespace conedist
