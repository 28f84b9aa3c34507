#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using conedist::BoundCertificate;
using conedist::check_reachability;
using conedist::diameter_bound;
using conedist::FeasibilityReport;
using conedist::Instance;
using conedist::InputError;
using conedist::lift_to_slice;
using conedist::PreconditionError;
using conedist::scale_back;
using conedist::slice_geometry;
using conedist::SliceGeometry;
using conedist::validate_instance;
using conedist::Vector;
using testutil::five_point_instance;
using testutil::near;
using testutil::near_vec;
using testutil::vec;

TEST_CASE("validate_instance rejects malformed data") {
  Instance good = five_point_instance();
  REQUIRE_NOTHROW(validate_instance(good));

  Instance bad = good;
  bad.target = vec({1, 1});
  REQUIRE_THROWS_AS(validate_instance(bad), InputError);

  bad = good;
  bad.generators[2] = vec({1, 1});
  REQUIRE_THROWS_AS(validate_instance(bad), InputError);

  bad = good;
  bad.target[1] = -0.5;
  REQUIRE_THROWS_AS(validate_instance(bad), InputError);

  bad = good;
  bad.generators[0][0] = -1e-30;
  REQUIRE_THROWS_AS(validate_instance(bad), InputError);

  bad = good;
  bad.target = vec({0, 0, 0});
  REQUIRE_THROWS_AS(validate_instance(bad), InputError);

  bad = good;
  bad.generators.clear();
  REQUIRE_THROWS_AS(validate_instance(bad), InputError);

  bad = good;
  for (Vector& y : bad.generators) y.setZero();
  REQUIRE_THROWS_AS(validate_instance(bad), InputError);
}

TEST_CASE("reachability is an exact sign test with the smallest witness") {
  const FeasibilityReport report = check_reachability(five_point_instance());
  REQUIRE(report.reachable);
  REQUIRE(report.witness_index.has_value());
  REQUIRE(*report.witness_index == 0);

  // Every generator orthogonal to the target: nearest cone point is 0.
  Instance blocked;
  blocked.generators = {vec({0, 0, 2}), vec({0, 0, 1})};
  blocked.target = vec({1, 1, 0});
  const FeasibilityReport none = check_reachability(blocked);
  REQUIRE_FALSE(none.reachable);
  REQUIRE_FALSE(none.witness_index.has_value());

  // A tiny but positive inner product still counts; no epsilon is applied.
  Instance faint;
  faint.generators = {vec({1e-200, 0, 1})};
  faint.target = vec({1, 1, 0});
  REQUIRE(check_reachability(faint).reachable);
}

TEST_CASE("lift_to_slice scales points onto the slice") {
  const Instance instance = five_point_instance();
  const Vector& target = instance.target;

  // (1,1,2) already satisfies target.y = target.target.
  REQUIRE(near_vec(lift_to_slice(instance.generators[0], target), vec({1, 1, 2}), 1e-15));
  // (3,0,2) has target.y = 3, so the lift scale is 2/3.
  REQUIRE(near_vec(lift_to_slice(instance.generators[3], target), vec({2, 0, 4.0 / 3.0}), 1e-15));
  // The target itself is a fixed point.
  REQUIRE(near_vec(lift_to_slice(target, target), target, 1e-15));

  // target.y = 0 has no slice multiple.
  REQUIRE_THROWS_AS(lift_to_slice(instance.generators[4], target), PreconditionError);
  REQUIRE_THROWS_AS(lift_to_slice(vec({1, 1}), target), InputError);
}

TEST_CASE("lift is idempotent and lands on the slice") {
  std::mt19937_64 rng(11);
  const double ztz_tol = 1e-12;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const Instance instance = testutil::random_instance(rng, n, 1 + trial % 20);
    const double ztz = instance.target.squaredNorm();
    for (const Vector& y : instance.generators) {
      if (!(instance.target.dot(y) > 0.0)) continue;
      const Vector lifted = lift_to_slice(y, instance.target);
      REQUIRE(near(instance.target.dot(lifted), ztz, ztz_tol));
      REQUIRE((lifted.array() >= 0.0).all());
      REQUIRE(near_vec(lift_to_slice(lifted, instance.target), lifted, 1e-12));
    }
  }
}

TEST_CASE("scale_back maps a slice point to the nearest ray point") {
  const Vector target = vec({1, 1, 0});

  // Terminal iterate of the worked instance and its cone point.
  const Vector z_slice = vec({17.0 / 11.0, 5.0 / 11.0, 18.0 / 11.0});
  const Vector z_star = scale_back(z_slice, target);
  REQUIRE(near_vec(z_star, vec({17.0 / 29.0, 5.0 / 29.0, 18.0 / 29.0}), 1e-14));

  // The residual at the scaled point is orthogonal to the point.
  REQUIRE(near((target - z_star).dot(z_star), 0.0, 1e-14));

  // A target on the slice is its own nearest ray point.
  REQUIRE(near_vec(scale_back(target, target), target, 1e-15));

  // Off-slice inputs are rejected, as is the zero vector.
  REQUIRE_THROWS_AS(scale_back(2.0 * target, target), PreconditionError);
  REQUIRE_THROWS_AS(scale_back(vec({0, 0, 0}), target), PreconditionError);
  REQUIRE_THROWS_AS(scale_back(vec({1, 1}), target), InputError);
}

TEST_CASE("scale_back is a projection onto the ray for random slice points") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const Instance instance = testutil::random_instance(rng, n, 2 + trial % 10);
    const auto report = check_reachability(instance);
    if (!report.reachable) continue;

    // Random convex combination of lifted generators stays on the slice.
    Vector z = Vector::Zero(static_cast<Eigen::Index>(n));
    double total = 0.0;
    std::vector<double> weights;
    for (const Vector& y : instance.generators) {
      const double w = conedist::detail::uniform01(rng);
      weights.push_back(instance.target.dot(y) > 0.0 ? w : 0.0);
      total += weights.back();
    }
    if (total == 0.0) continue;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] > 0.0) {
        z += (weights[i] / total) * lift_to_slice(instance.generators[i], instance.target);
      }
    }

    const Vector z_star = scale_back(z, instance.target, 1e-9);
    // Orthogonality of the residual makes z_star the ray's nearest point.
    REQUIRE(near((instance.target - z_star).dot(z_star), 0.0, 1e-12));
    // And scaling is norm-reducing toward the target here.
    REQUIRE((z_star - instance.target).norm() <= (z - instance.target).norm() + 1e-12);
  }
}

TEST_CASE("slice_geometry lists one vertex per positive coordinate") {
  const SliceGeometry geometry = slice_geometry(vec({1, 1, 0}));
  REQUIRE(near(geometry.target_norm_sq, 2.0, 1e-15));
  REQUIRE(geometry.vertex_indices == std::vector<std::size_t>{0, 1});
  REQUIRE(geometry.ray_indices == std::vector<std::size_t>{2});
  REQUIRE(geometry.vertices.size() == 2);
  REQUIRE(near_vec(geometry.vertices[0], vec({2, 0, 0}), 1e-15));
  REQUIRE(near_vec(geometry.vertices[1], vec({0, 2, 0}), 1e-15));

  const SliceGeometry tail = slice_geometry(vec({0, 3}));
  REQUIRE(near(tail.target_norm_sq, 9.0, 1e-15));
  REQUIRE(tail.vertex_indices == std::vector<std::size_t>{1});
  REQUIRE(tail.ray_indices == std::vector<std::size_t>{0});
  REQUIRE(near_vec(tail.vertices[0], vec({0, 3}), 1e-15));

  const SliceGeometry line = slice_geometry(vec({1}));
  REQUIRE(line.vertex_indices == std::vector<std::size_t>{0});
  REQUIRE(line.ray_indices.empty());
  REQUIRE(near_vec(line.vertices[0], vec({1}), 1e-15));

  REQUIRE_THROWS_AS(slice_geometry(vec({0, 0})), InputError);
}

TEST_CASE("slice_geometry vertices and rays satisfy the slice equations") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 12;
    Vector target = conedist::detail::uniform_vector(rng, n);
    // Zero out a few coordinates to exercise rays.
    for (Eigen::Index i = 0; i < target.size(); ++i) {
      if (conedist::detail::uniform01(rng) < 0.3) target[i] = 0.0;
    }
    if (target.isZero(0.0)) target[0] = 0.5;

    const SliceGeometry geometry = slice_geometry(target);
    REQUIRE(geometry.vertex_indices.size() + geometry.ray_indices.size() ==
            static_cast<std::size_t>(target.size()));
    for (std::size_t v = 0; v < geometry.vertices.size(); ++v) {
      const Vector& vertex = geometry.vertices[v];
      REQUIRE(near(target.dot(vertex), geometry.target_norm_sq, 1e-12));
      REQUIRE((vertex.array() >= 0.0).all());
      // Exactly one nonzero coordinate, the listed one.
      Eigen::Index nonzeros = 0;
      for (Eigen::Index i = 0; i < vertex.size(); ++i) nonzeros += vertex[i] != 0.0;
      REQUIRE(nonzeros == 1);
      REQUIRE(vertex[static_cast<Eigen::Index>(geometry.vertex_indices[v])] > 0.0);
    }
    for (std::size_t r : geometry.ray_indices) {
      REQUIRE(target[static_cast<Eigen::Index>(r)] == 0.0);
    }
  }
}

TEST_CASE("diameter_bound matches the worked instance") {
  const BoundCertificate certificate = diameter_bound(five_point_instance());
  // Ratios (y.y)/(target.y)^2: 6/4, 13/4, 14/9, 13/9; the orthogonal
  // generator does not participate.
  REQUIRE(near(certificate.rho, 13.0 / 4.0, 1e-15));
  REQUIRE(near(certificate.diam_sq_bound, 26.0, 1e-15));

  REQUIRE(near(certificate.gap_bound_at(0), 26.0, 1e-15));
  for (std::size_t k = 0; k + 1 < 40; ++k) {
    REQUIRE(certificate.gap_bound_at(k + 1) < certificate.gap_bound_at(k));
  }

  Instance self;
  self.generators = {vec({1, 1, 0})};
  self.target = vec({1, 1, 0});
  const BoundCertificate tight = diameter_bound(self);
  REQUIRE(near(tight.rho, 0.5, 1e-15));
  REQUIRE(near(tight.diam_sq_bound, 4.0, 1e-15));

  Instance blocked;
  blocked.generators = {vec({0, 0, 2})};
  blocked.target = vec({1, 1, 0});
  REQUIRE_THROWS_AS(diameter_bound(blocked), PreconditionError);
}

TEST_CASE("diameter_bound is invariant to per-generator scaling") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance instance = testutil::random_instance(rng, 2 + trial % 8, 2 + trial % 12);
    if (!check_reachability(instance).reachable) continue;
    const BoundCertificate base = diameter_bound(instance);

    Instance scaled = instance;
    for (Vector& y : scaled.generators) {
      y *= 0.05 + 20.0 * conedist::detail::uniform01(rng);
    }
    const BoundCertificate after = diameter_bound(scaled);
    REQUIRE(near(after.rho, base.rho, 1e-12));
    REQUIRE(near(after.diam_sq_bound, base.diam_sq_bound, 1e-12));
  }
}

TEST_CASE("diameter_bound contains every slice lift") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance instance = testutil::random_instance(rng, 2 + trial % 8, 2 + trial % 12);
    if (!check_reachability(instance).reachable) continue;
    const BoundCertificate certificate = diameter_bound(instance);
    const double ztz = instance.target.squaredNorm();

    std::vector<Vector> lifts;
    for (const Vector& y : instance.generators) {
      if (instance.target.dot(y) > 0.0) lifts.push_back(lift_to_slice(y, instance.target));
    }
    for (const Vector& s : lifts) {
      REQUIRE(s.squaredNorm() <= certificate.rho * ztz * ztz + 1e-9);
    }
    for (std::size_t a = 0; a < lifts.size(); ++a) {
      for (std::size_t b = a + 1; b < lifts.size(); ++b) {
        REQUIRE((lifts[a] - lifts[b]).squaredNorm() <= certificate.diam_sq_bound + 1e-9);
      }
    }
  }
}
