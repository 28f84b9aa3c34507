#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <random>

#include "conedist/conedist.hpp"

namespace testutil {

inline conedist::Vector vec(std::initializer_list<double> values) {
  conedist::Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

inline bool near(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline bool near_vec(const conedist::Vector& a, const conedist::Vector& b, double tol) {
  return a.size() == b.size() && (a - b).norm() <= tol * (1.0 + b.norm());
}

inline bool same_vec(const conedist::Vector& a, const conedist::Vector& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

// Worked instance used across the suites: five generators in R^3 and a target
// on the boundary of the orthant. Small enough to follow every step by hand:
// the fifth generator is orthogonal to the target, the distance is
// sqrt(36/29), and the nearest point is (17, 5, 18)/29.
inline conedist::Instance five_point_instance() {
  conedist::Instance instance;
  instance.generators = {vec({1, 1, 2}), vec({0, 2, 3}), vec({2, 1, 3}), vec({3, 0, 2}),
                         vec({0, 0, 2})};
  instance.target = vec({1, 1, 0});
  return instance;
}

// Uniform nonnegative data; targets drawn like the generators.
inline conedist::Instance random_instance(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  conedist::Instance instance;
  for (std::size_t i = 0; i < m; ++i) {
    instance.generators.push_back(conedist::detail::uniform_vector(rng, n));
  }
  instance.target = conedist::detail::uniform_vector(rng, n);
  return instance;
}

}  // namespace testutil
