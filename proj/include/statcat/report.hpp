#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "statcat/kernel.hpp"
#include "statcat/rational.hpp"

namespace statcat {

/// Counterexample attached to a failed check. Fields that do not apply to
/// a given check stay empty. Atom indices refer to the σ-algebra named by
/// the check (x: domain/source side, y: codomain/target side).
struct Witness {
  std::string kind;
  std::optional<std::size_t> member;
  std::optional<std::size_t> other_member;
  std::optional<std::size_t> x;
  std::optional<std::size_t> y;
  std::optional<Rational> lhs;
  std::optional<Rational> rhs;
  RationalVector values;
  std::string detail;
};

/// Multipliers y with yᵀA ≤ 0 and yᵀb > 0 for a system Ax = b, x ≥ 0.
struct FarkasCertificate {
  RationalVector multipliers;
  std::vector<std::string> constraint_labels;
};

struct Certificate {
  std::optional<MarkovKernel> forward;
  std::optional<MarkovKernel> backward;
  std::optional<FarkasCertificate> infeasibility;
  std::optional<std::vector<std::size_t>> bijection;

  bool empty() const {
    return !forward && !backward && !infeasibility && !bijection;
  }
};

struct CheckReport {
  bool pass = false;
  std::string route;
  std::optional<Witness> witness;
  Certificate certificate;
  /// Number of elementary comparisons performed (pairs, triples, ...).
  std::size_t checked = 0;
};

}  // namespace statcat
