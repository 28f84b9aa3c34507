#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "conedist/instance.hpp"

namespace conedist {

enum class TargetMode { RandomNonneg, InCone, OrthogonalMix };

// Knobs of the clustered random family. With cluster_coefficient = 0 every
// generator is an independent uniform draw from [0,1)^n. Otherwise the m
// generators split into num_clusters equal blocks; the first point of a block
// is its center c (uniform), the rest are cluster_coefficient * c + a fresh
// uniform draw, which concentrates each block along its center's direction.
struct GenParams {
  std::size_t n = 10;
  std::size_t m = 20;
  std::size_t num_clusters = 1;
  double cluster_coefficient = 0.0;
  std::uint64_t seed = 0;
  TargetMode target_mode = TargetMode::RandomNonneg;
};

namespace detail {

// 53-bit uniform in [0, 1). Built on the raw engine output because engine
// streams are pinned by the standard while distributions are not; this keeps
// instances bit-identical across standard libraries.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Modulo bias is ~2^-60 for the sizes used here; irrelevant.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t bound) {
  return static_cast<std::size_t>(rng() % bound);
}

inline Vector uniform_vector(std::mt19937_64& rng, std::size_t n) {
  Vector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < v.size(); ++j) v[j] = uniform01(rng);
  return v;
}

// First k entries of a uniform permutation of 0..count-1 (partial
// Fisher-Yates).
inline std::vector<std::size_t> sample_indices(std::mt19937_64& rng, std::size_t count,
                                               std::size_t k) {
  std::vector<std::size_t> indices(count);
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  for (std::size_t j = 0; j < k; ++j) {
    std::swap(indices[j], indices[j + uniform_index(rng, count - j)]);
  }
  indices.resize(k);
  return indices;
}

}  // namespace detail

// Deterministic in params.seed. Draw order: generators in index order (entry
// by entry, centers before their block), then the target.
//
// Target modes:
//  - RandomNonneg: an independent uniform draw.
//  - InCone: a nonnegative combination of min(3, m) distinct generators
//    (indices sampled first, then one uniform weight per index).
//  - OrthogonalMix: a uniform draw with floor(n/2) sampled coordinates zeroed.
inline Instance generate(const GenParams& params) {
  if (params.n == 0) throw InputError("generate: n must be at least 1");
  if (params.m == 0) throw InputError("generate: m must be at least 1");
  if (params.num_clusters == 0) throw InputError("generate: num_clusters must be at least 1");
  if (params.num_clusters > params.m) {
    throw InputError("generate: num_clusters = " + std::to_string(params.num_clusters) +
                     " exceeds m = " + std::to_string(params.m));
  }
  if (params.m % params.num_clusters != 0) {
    throw InputError("generate: num_clusters = " + std::to_string(params.num_clusters) +
                     " does not divide m = " + std::to_string(params.m));
  }
  if (!std::isfinite(params.cluster_coefficient) || params.cluster_coefficient < 0.0) {
    throw InputError("generate: cluster_coefficient must be finite and nonnegative");
  }

  std::mt19937_64 rng(params.seed);
  std::vector<Vector> generators;
  generators.reserve(params.m);
  if (params.cluster_coefficient == 0.0) {
    for (std::size_t i = 0; i < params.m; ++i) {
      generators.push_back(detail::uniform_vector(rng, params.n));
    }
  } else {
    const std::size_t block = params.m / params.num_clusters;
    for (std::size_t cluster = 0; cluster < params.num_clusters; ++cluster) {
      Vector center = detail::uniform_vector(rng, params.n);
      generators.push_back(center);
      for (std::size_t p = 1; p < block; ++p) {
        generators.push_back(params.cluster_coefficient * generators[cluster * block] +
                             detail::uniform_vector(rng, params.n));
      }
    }
  }

  Vector target;
  switch (params.target_mode) {
    case TargetMode::RandomNonneg:
      target = detail::uniform_vector(rng, params.n);
      break;
    case TargetMode::InCone: {
      const std::size_t k = std::min<std::size_t>(3, params.m);
      const std::vector<std::size_t> picks = detail::sample_indices(rng, params.m, k);
      target = Vector::Zero(static_cast<Eigen::Index>(params.n));
      for (std::size_t j = 0; j < k; ++j) {
        target += detail::uniform01(rng) * generators[picks[j]];
      }
      break;
    }
    case TargetMode::OrthogonalMix: {
      target = detail::uniform_vector(rng, params.n);
      const std::size_t zeros = params.n / 2;
      const std::vector<std::size_t> picks = detail::sample_indices(rng, params.n, zeros);
      for (std::size_t idx : picks) target[static_cast<Eigen::Index>(idx)] = 0.0;
      break;
    }
  }
  return Instance{std::move(generators), std::move(target)};
}

}  // namespace conedist
