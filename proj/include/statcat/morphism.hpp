/**
 * @file morphism.hpp
 * @brief Statistical morphisms induced by measurable maps, their mono/epi/iso
 *        classification, and the exact reverse-kernel search.
 *
 * Two iso verdicts are reported side by side. `iso_naive` is the set-level
 * one (mono and epi on L¹-classes). `iso_reverse_kernel` asks for an actual
 * Markov kernel back from the target to the source that undoes the morphism
 * on both sides; the two can disagree (the first-coordinate statistic on a
 * coin pair is mono and epi but has no reverse kernel).
 */
#pragma once

#include <optional>
#include <vector>

#include "statcat/kernel.hpp"
#include "statcat/model.hpp"
#include "statcat/report.hpp"

namespace statcat {

class StatisticalMorphism {
 public:
  /// `assignment[i]` is the target member L¹-identical to T_*(source[i]).
  /// Throws FamilyMismatch if that is not the case.
  StatisticalMorphism(FiniteModel source, FiniteModel target, MeasurableMap map,
                      std::vector<std::size_t> assignment);

  const FiniteModel& source() const noexcept { return source_; }
  const FiniteModel& target() const noexcept { return target_; }
  const MeasurableMap& map() const noexcept { return map_; }
  const MarkovKernel& kernel() const noexcept { return kernel_; }
  const std::vector<std::size_t>& assignment() const noexcept { return assignment_; }

 private:
  FiniteModel source_;
  FiniteModel target_;
  MeasurableMap map_;
  MarkovKernel kernel_;
  std::vector<std::size_t> assignment_;
};

/// Target = fresh pushforward family on the map's codomain, P_i ↦ T_*P_i.
/// A source dominating measure is pushed forward too.
StatisticalMorphism induce_morphism(const FiniteModel& source, const MeasurableMap& map);

/// Matches each pushforward against a user-supplied target family (lowest
/// L¹-identical index wins). Throws FamilyMismatch naming the source member
/// whose image has no partner.
StatisticalMorphism match_morphism(const FiniteModel& source, const FiniteModel& target,
                                   const MeasurableMap& map);

/// ker_Q(f): source members whose image is L¹-identical to target member q.
std::vector<std::size_t> morphism_kernel_at(const StatisticalMorphism& f, std::size_t q_index);

struct ReverseKernelPair {
  RationalMeasure source;
  RationalMeasure target;
};

struct ReverseKernelResult {
  std::optional<MarkovKernel> kernel;
  std::optional<FarkasCertificate> certificate;
  std::size_t pivots = 0;

  bool feasible() const noexcept { return kernel.has_value(); }
};

/// Searches a kernel K from the target σ-algebra to the source σ-algebra
/// with K(target_i) = source_i on atoms for every pair. Either result is
/// re-verified by direct exact arithmetic before it is returned. A
/// `candidate` that reproduces every pair is returned as is, without solving.
ReverseKernelResult find_reverse_kernel(const std::vector<ReverseKernelPair>& pairs,
                                        const SigmaAlgebra& source_sigma,
                                        const SigmaAlgebra& target_sigma,
                                        const std::optional<MarkovKernel>& candidate = std::nullopt);

/// Power-set σ-algebras on the spaces of the first pair; the identity is the
/// candidate when both spaces coincide.
ReverseKernelResult find_reverse_kernel(const std::vector<ReverseKernelPair>& pairs);

struct MorphismClassification {
  bool mono = false;
  bool epi = false;
  bool iso_naive = false;
  bool iso_reverse_kernel = false;
  std::optional<MarkovKernel> reverse_kernel;
  std::optional<FarkasCertificate> infeasibility;
  /// First failure found: mono collision, unhit target class, or the
  /// reason the reverse-kernel route failed.
  std::optional<Witness> witness;
};

MorphismClassification classify_morphism(const StatisticalMorphism& f);

}  // namespace statcat
