/**
 * @file inference.hpp
 * @brief Sufficiency, completeness and statistical equivalence of a
 *        candidate statistic, decided by three independent routes.
 *
 * Routes for check_equivalence:
 *  - "iso": the induced morphism has a two-sided reverse kernel;
 *  - "detailed-balance": one backward table satisfies detailed balance for
 *    every source class representative (solved as its own linear system);
 *  - "suff-complete": T is sufficient for the representatives and complete
 *    for the target reference measure.
 * With mixture reference measures the three coincide; a user-supplied
 * dominating measure can separate them, which shows up as agree = false.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "statcat/kernel.hpp"
#include "statcat/model.hpp"
#include "statcat/parallel.hpp"
#include "statcat/report.hpp"

namespace statcat {

/// Pass iff the dual conditional of every listed member agrees with the
/// reference-measure dual wherever both are defined. Witness: first
/// disagreement in (member, x, y) order, kind "sufficiency-pair".
CheckReport is_sufficient(const FiniteModel& model, const MeasurableMap& map,
                          const std::vector<std::size_t>& subfamily);
CheckReport is_sufficient(const FiniteModel& model, const MeasurableMap& map);

/// σ-algebra on the map's codomain generated by the images T(A) of the
/// atoms of `source_events`, each saturated to the codomain atoms it meets.
SigmaAlgebra image_sigma_algebra(const MeasurableMap& map, const SigmaAlgebra& source_events);

/// Pass iff ρ ↦ E_ν(ρ | image σ-algebra) is injective on ν-positive target
/// atoms (ν = target reference measure). The witness carries a primitive
/// integer null vector per point, kind "completeness-null-vector".
CheckReport is_complete(const FiniteModel& target, const MeasurableMap& map,
                        const SigmaAlgebra& source_events);
CheckReport is_complete(const FiniteModel& target, const MeasurableMap& map);

/// Every pushforward of a source member has an L¹-identical target member
/// and every target member is such a pushforward. Returns the first
/// violation, kind "family-mismatch" (`member` = source index, or
/// `other_member` = target index).
std::optional<Witness> family_mismatch(const FiniteModel& a, const FiniteModel& b,
                                       const MeasurableMap& map);

struct EquivalenceVerdict {
  CheckReport route_iso;
  CheckReport route_detailed_balance;
  CheckReport route_suff_complete;
  bool agree = false;

  bool pass() const noexcept {
    return route_iso.pass && route_detailed_balance.pass && route_suff_complete.pass;
  }
};

/// Throws SpaceMismatch if the map does not run from a's σ-algebra to b's.
EquivalenceVerdict check_equivalence(const FiniteModel& a, const FiniteModel& b,
                                     const MeasurableMap& map, const ExecutionPolicy& policy = {});

struct OracleEntry {
  std::vector<std::size_t> assignment;
  EquivalenceVerdict verdict;
};

struct OracleResult {
  std::size_t maps_enumerated = 0;
  std::size_t measurable = 0;
  /// Measurable maps meeting the family precondition, in lexicographic
  /// order of their assignment.
  std::vector<OracleEntry> candidates;

  bool any_equivalent() const;
  std::size_t disagreements() const;
};

/// Brute force over every point map a -> b. Both spaces need ≤ 4 points,
/// else SearchBoundExceeded.
OracleResult oracle_equivalence_search(const FiniteModel& a, const FiniteModel& b,
                                       const ExecutionPolicy& policy = {});

}  // namespace statcat
