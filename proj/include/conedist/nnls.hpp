#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "conedist/instance.hpp"
#include "conedist/solver.hpp"

namespace conedist {

// Exact nonnegative least-squares answer obtained by support enumeration.
struct NnlsSolution {
  std::vector<double> coefficients;  // per generator, zero off the support
  Vector point;                      // nearest cone point
  double distance_sq = 0.0;
  std::vector<std::size_t> support;  // indices with a positive coefficient
};

inline constexpr std::size_t kNnlsMaxGenerators = 50;
inline constexpr std::size_t kNnlsMaxDimension = 12;
inline constexpr std::size_t kNnlsMaxSupportSize = 12;

namespace detail {

// Depth-first walk over index-increasing supports. Each node solves the
// unconstrained least squares restricted to the support: via an incrementally
// grown Cholesky factor of the Gram block while it stays positive definite,
// and via a complete orthogonal decomposition (minimum-norm solution) once a
// rank-deficient extension is hit. Candidates with any negative coefficient
// are discarded; the nearest point always has an all-nonnegative support
// solution of size at most the dimension, so the minimum survives.
struct NnlsEnumerator {
  const std::vector<Vector>& generators;
  const Vector& target;
  Eigen::MatrixXd gram;
  Eigen::VectorXd proj;  // generator.target per index
  std::size_t max_support;

  Eigen::MatrixXd chol;  // lower-triangular factor of gram(chosen, chosen)
  std::vector<std::size_t> chosen;
  Eigen::VectorXd workspace;

  double best_dsq = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_chosen;
  Eigen::VectorXd best_lambda;
  Vector best_point;

  NnlsEnumerator(const std::vector<Vector>& gens, const Vector& tgt, std::size_t cap)
      : generators(gens), target(tgt), max_support(cap) {
    const Eigen::Index m = static_cast<Eigen::Index>(gens.size());
    gram.resize(m, m);
    proj.resize(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      proj[i] = gens[static_cast<std::size_t>(i)].dot(tgt);
      for (Eigen::Index j = 0; j <= i; ++j) {
        gram(i, j) = gens[static_cast<std::size_t>(i)].dot(gens[static_cast<std::size_t>(j)]);
        gram(j, i) = gram(i, j);
      }
    }
    chol.resize(static_cast<Eigen::Index>(cap), static_cast<Eigen::Index>(cap));
    workspace.resize(static_cast<Eigen::Index>(cap));

    // The empty support (the origin) is always a candidate.
    best_dsq = tgt.squaredNorm();
    best_point = Vector::Zero(tgt.size());
  }

  // Appends index j to the factor; fails when the extended block is not
  // numerically positive definite.
  bool push_factor(std::size_t j) {
    const Eigen::Index k = static_cast<Eigen::Index>(chosen.size());
    for (Eigen::Index r = 0; r < k; ++r) {
      double c = gram(static_cast<Eigen::Index>(chosen[static_cast<std::size_t>(r)]),
                      static_cast<Eigen::Index>(j));
      for (Eigen::Index t = 0; t < r; ++t) c -= chol(r, t) * workspace[t];
      workspace[r] = c / chol(r, r);
    }
    double d = gram(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j));
    for (Eigen::Index t = 0; t < k; ++t) d -= workspace[t] * workspace[t];
    if (!(d > 1e-12 * gram(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)))) {
      return false;
    }
    for (Eigen::Index t = 0; t < k; ++t) chol(k, t) = workspace[t];
    chol(k, k) = std::sqrt(d);
    return true;
  }

  Eigen::VectorXd solve_via_cholesky() const {
    const Eigen::Index k = static_cast<Eigen::Index>(chosen.size());
    Eigen::VectorXd lambda(k);
    for (Eigen::Index r = 0; r < k; ++r) {
      double v = proj[static_cast<Eigen::Index>(chosen[static_cast<std::size_t>(r)])];
      for (Eigen::Index t = 0; t < r; ++t) v -= chol(r, t) * lambda[t];
      lambda[r] = v / chol(r, r);
    }
    for (Eigen::Index r = k - 1; r >= 0; --r) {
      double v = lambda[r];
      for (Eigen::Index t = r + 1; t < k; ++t) v -= chol(t, r) * lambda[t];
      lambda[r] = v / chol(r, r);
    }
    return lambda;
  }

  Eigen::VectorXd solve_via_cod() const {
    const Eigen::Index k = static_cast<Eigen::Index>(chosen.size());
    Eigen::MatrixXd block(k, k);
    Eigen::VectorXd rhs(k);
    for (Eigen::Index r = 0; r < k; ++r) {
      rhs[r] = proj[static_cast<Eigen::Index>(chosen[static_cast<std::size_t>(r)])];
      for (Eigen::Index c = 0; c < k; ++c) {
        block(r, c) = gram(static_cast<Eigen::Index>(chosen[static_cast<std::size_t>(r)]),
                           static_cast<Eigen::Index>(chosen[static_cast<std::size_t>(c)]));
      }
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(block);
    return cod.solve(rhs);
  }

  void consider(const Eigen::VectorXd& lambda) {
    for (Eigen::Index t = 0; t < lambda.size(); ++t) {
      if (lambda[t] < 0.0) return;
    }
    Vector point = Vector::Zero(target.size());
    for (std::size_t t = 0; t < chosen.size(); ++t) {
      point += lambda[static_cast<Eigen::Index>(t)] * generators[chosen[t]];
    }
    const double dsq = (point - target).squaredNorm();
    if (dsq < best_dsq) {
      best_dsq = dsq;
      best_chosen = chosen;
      best_lambda = lambda;
      best_point = std::move(point);
    }
  }

  void extend(bool dependent) {
    const std::size_t start = chosen.empty() ? 0 : chosen.back() + 1;
    for (std::size_t j = start; j < generators.size(); ++j) {
      bool child_dependent = dependent;
      if (!child_dependent && !push_factor(j)) child_dependent = true;
      chosen.push_back(j);
      consider(child_dependent ? solve_via_cod() : solve_via_cholesky());
      if (chosen.size() < max_support) extend(child_dependent);
      chosen.pop_back();
    }
  }
};

}  // namespace detail

// Enumerates every support of size at most min(dimension, m, 12) in
// index-lexicographic order and keeps the best all-nonnegative candidate,
// preferring the earliest support on exact ties. Sizes are capped because the
// walk is exponential in m.
inline NnlsSolution nnls_bruteforce(const Instance& instance) {
  validate_instance(instance);
  const std::size_t m = instance.num_generators();
  const std::size_t n = instance.dimension();
  if (m > kNnlsMaxGenerators) {
    throw CapacityError("nnls_bruteforce: " + std::to_string(m) +
                        " generators exceed the cap of " + std::to_string(kNnlsMaxGenerators));
  }
  if (n > kNnlsMaxDimension) {
    throw CapacityError("nnls_bruteforce: dimension " + std::to_string(n) +
                        " exceeds the cap of " + std::to_string(kNnlsMaxDimension));
  }
  const std::size_t cap = std::min({n, m, kNnlsMaxSupportSize});
  detail::NnlsEnumerator enumerator(instance.generators, instance.target, cap);
  enumerator.extend(false);

  NnlsSolution result;
  result.coefficients.assign(m, 0.0);
  result.point = enumerator.best_point;
  result.distance_sq = enumerator.best_dsq;
  for (std::size_t t = 0; t < enumerator.best_chosen.size(); ++t) {
    const double lambda = enumerator.best_lambda[static_cast<Eigen::Index>(t)];
    result.coefficients[enumerator.best_chosen[t]] = lambda;
    if (lambda > 0.0) result.support.push_back(enumerator.best_chosen[t]);
  }
  return result;
}

struct CheckResult {
  bool pass = false;
  double residual = 0.0;
};

struct VerificationReport {
  bool pass = false;
  double oracle_distance_sq = 0.0;
  CheckResult distance_agreement;  // candidate distance^2 vs the oracle
  CheckResult cone_membership;     // support ledger rebuilds z_star
  CheckResult slice_scaling;       // z_star is the scale-back of z_slice
};

// Cross-checks a solver answer against the enumeration oracle. Residuals are
// scaled so `pass` means residual <= tolerance throughout; nothing throws on
// a bad candidate, the report just says so.
inline VerificationReport verify_solution(const Solution& candidate, const Instance& instance,
                                          double tolerance = 1e-6) {
  validate_instance(instance);
  const NnlsSolution oracle = nnls_bruteforce(instance);

  VerificationReport report;
  report.oracle_distance_sq = oracle.distance_sq;

  const double cand_dsq = candidate.distance * candidate.distance;
  report.distance_agreement.residual =
      std::abs(cand_dsq - oracle.distance_sq) / (1.0 + oracle.distance_sq);
  report.distance_agreement.pass = report.distance_agreement.residual <= tolerance;

  const double scale = 1.0 + candidate.z_star.norm();
  Vector rebuilt = Vector::Zero(instance.target.size());
  bool coefficients_ok = true;
  for (const SupportEntry& entry : candidate.support) {
    if (entry.index >= instance.num_generators()) {
      throw InputError("verify_solution: support index " + std::to_string(entry.index) +
                       " is out of range");
    }
    if (entry.coefficient < 0.0) coefficients_ok = false;
    rebuilt += entry.coefficient * instance.generators[entry.index];
  }
  if (candidate.z_star.size() != instance.target.size()) {
    throw InputError("verify_solution: z_star dimension mismatch");
  }
  report.cone_membership.residual = (rebuilt - candidate.z_star).norm() / scale;
  report.cone_membership.pass =
      coefficients_ok && report.cone_membership.residual <= tolerance;

  if (candidate.z_slice) {
    const double znorm_sq = candidate.z_slice->squaredNorm();
    if (znorm_sq > 0.0 && candidate.z_slice->size() == instance.target.size()) {
      const Vector predicted = (instance.target.squaredNorm() / znorm_sq) * (*candidate.z_slice);
      report.slice_scaling.residual = (predicted - candidate.z_star).norm() / scale;
    } else {
      report.slice_scaling.residual = std::numeric_limits<double>::infinity();
    }
  } else {
    // Unreachable answers carry no slice point; the origin at distance
    // |target| is the only consistent result.
    const double tnorm = instance.target.norm();
    report.slice_scaling.residual = candidate.z_star.norm() / scale +
                                    std::abs(candidate.distance - tnorm) / (1.0 + tnorm);
  }
  report.slice_scaling.pass = report.slice_scaling.residual <= tolerance;

  report.pass = report.distance_agreement.pass && report.cone_membership.pass &&
                report.slice_scaling.pass;
  return report;
}

}  // namespace conedist
