#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "conedist/errors.hpp"
#include "conedist/types.hpp"

namespace conedist {

enum class BlpSense { LessEqual, Equal, GreaterEqual };

struct BlpRow {
  Vector coeffs;
  BlpSense sense = BlpSense::LessEqual;
  double rhs = 0.0;
};

// Linear constraint system over n binary variables; its feasible points form
// an implicitly described generator set.
struct BlpSystem {
  std::size_t n = 0;
  std::vector<BlpRow> rows;
};

inline constexpr std::size_t kDefaultBlpEnumerationCap = 24;

namespace detail {

// Row comparisons are exact; systems with integer data behave exactly.
inline bool blp_row_satisfied(const BlpRow& row, const Vector& point) {
  const double lhs = row.coeffs.dot(point);
  switch (row.sense) {
    case BlpSense::LessEqual: return lhs <= row.rhs;
    case BlpSense::Equal: return lhs == row.rhs;
    case BlpSense::GreaterEqual: return lhs >= row.rhs;
  }
  return false;
}

}  // namespace detail

// Materializes every feasible 0/1 point, in lexicographic order with the
// first coordinate most significant. Work is Theta(2^n * rows), so n is
// gated by enumeration_cap.
inline std::vector<Vector> enumerate_blp(const BlpSystem& system,
                                         std::size_t enumeration_cap = kDefaultBlpEnumerationCap) {
  if (system.n == 0) throw InputError("enumerate_blp: system has no variables");
  if (system.n > enumeration_cap) {
    throw CapacityError("enumerate_blp: n = " + std::to_string(system.n) +
                        " exceeds the enumeration cap of " + std::to_string(enumeration_cap));
  }
  for (std::size_t r = 0; r < system.rows.size(); ++r) {
    const BlpRow& row = system.rows[r];
    if (static_cast<std::size_t>(row.coeffs.size()) != system.n) {
      throw InputError("enumerate_blp: row " + std::to_string(r) + " has " +
                       std::to_string(row.coeffs.size()) + " coefficients, expected " +
                       std::to_string(system.n));
    }
    if (!row.coeffs.allFinite() || !std::isfinite(row.rhs)) {
      throw InputError("enumerate_blp: row " + std::to_string(r) + " has a non-finite entry");
    }
  }
  std::vector<Vector> feasible;
  const std::uint64_t limit = std::uint64_t{1} << system.n;
  Vector point(static_cast<Eigen::Index>(system.n));
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    for (std::size_t j = 0; j < system.n; ++j) {
      point[static_cast<Eigen::Index>(j)] =
          ((mask >> (system.n - 1 - j)) & 1u) ? 1.0 : 0.0;
    }
    bool ok = true;
    for (const BlpRow& row : system.rows) {
      if (!detail::blp_row_satisfied(row, point)) {
        ok = false;
        break;
      }
    }
    if (ok) feasible.push_back(point);
  }
  return feasible;
}

}  // namespace conedist
