/**
 * @file simplex.hpp
 * @brief Exact rational feasibility for Ax = b, x ≥ 0.
 *
 * Phase-1 simplex on a dense tableau with Bland's rule (lowest-index
 * entering column, lowest-index leaving variable on ratio ties). The
 * pivot sequence is fully determined by the input. On infeasibility the
 * phase-1 duals give a Farkas vector y with yᵀA ≤ 0 and yᵀb > 0.
 */
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "statcat/rational.hpp"

namespace statcat {

struct LinearSystem {
  std::size_t variables = 0;
  RationalMatrix coefficients;
  RationalVector rhs;
  std::vector<std::string> labels;

  explicit LinearSystem(std::size_t n) : variables(n) {}

  /// Appends the equality row · x = value.
  void add_equality(RationalVector row, Rational value, std::string label);
  std::size_t constraints() const noexcept { return rhs.size(); }
};

struct FeasibilityResult {
  bool feasible = false;
  RationalVector point;   ///< feasible x when feasible
  RationalVector farkas;  ///< one multiplier per constraint when infeasible
  std::size_t pivots = 0;
};

FeasibilityResult solve_feasibility(const LinearSystem& system);

/// Ax = b and x ≥ 0, checked exactly.
bool satisfies(const LinearSystem& system, const RationalVector& x);

/// yᵀA ≤ 0 componentwise and yᵀb > 0, checked exactly.
bool certifies_infeasibility(const LinearSystem& system, const RationalVector& y);

}  // namespace statcat
