/**
 * @file measure.hpp
 * @brief Finite measurable spaces, exact rational measures and densities.
 *
 * A σ-algebra on a finite space is represented by its atoms (a partition of
 * the point indices). Measures are stored per point; anything that is only
 * defined "on the σ-algebra" is evaluated atom by atom. Almost-everywhere
 * statements are decided on atoms of positive reference mass, and density
 * values on null points are canonicalized to zero.
 */
#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "statcat/rational.hpp"

namespace statcat {

/// Ordered list of distinct point labels. Cheap to copy (shared storage).
class FiniteSpace {
 public:
  explicit FiniteSpace(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_->size(); }
  const std::string& label(std::size_t i) const;
  const std::vector<std::string>& labels() const noexcept { return *labels_; }
  std::optional<std::size_t> find(std::string_view label) const;

  friend bool operator==(const FiniteSpace& a, const FiniteSpace& b) {
    return a.labels_ == b.labels_ || *a.labels_ == *b.labels_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> labels_;
};

/// A set of point indices, kept sorted.
using Block = std::vector<std::size_t>;
using Event = std::vector<std::size_t>;

class SigmaAlgebra {
 public:
  /// Validates that `partition` is a partition of the points into nonempty
  /// blocks and stores it in canonical order (blocks sorted internally and
  /// ordered by smallest member).
  SigmaAlgebra(FiniteSpace space, std::vector<Block> partition);

  static SigmaAlgebra power_set(const FiniteSpace& space);
  static SigmaAlgebra trivial(const FiniteSpace& space);

  const FiniteSpace& space() const noexcept { return space_; }
  const std::vector<Block>& atoms() const noexcept { return atoms_; }
  std::size_t atom_count() const noexcept { return atoms_.size(); }
  std::size_t atom_of(std::size_t point) const { return atom_of_.at(point); }
  bool is_power_set() const noexcept { return atoms_.size() == space_.size(); }

  /// An event is measurable iff it is a union of atoms.
  bool is_measurable(std::span<const std::size_t> event) const;

  /// Every atom of *this is a union of atoms of `finer`.
  bool is_coarsening_of(const SigmaAlgebra& finer) const;

  /// Union of the given atoms, as a sorted event.
  Event event_of_atoms(std::span<const std::size_t> atom_indices) const;

  friend bool operator==(const SigmaAlgebra& a, const SigmaAlgebra& b) {
    return a.space_ == b.space_ && a.atoms_ == b.atoms_;
  }

 private:
  FiniteSpace space_;
  std::vector<Block> atoms_;
  std::vector<std::size_t> atom_of_;
};

/// Partition blocks in canonical (smallest-member-first) order.
std::vector<Block> atoms(const SigmaAlgebra& sigma);

class RationalMeasure {
 public:
  /// Throws InvalidMeasure on negative mass, wrong length, or (when
  /// is_probability) a total different from 1.
  RationalMeasure(FiniteSpace space, RationalVector mass, bool is_probability);

  static RationalMeasure probability(FiniteSpace space, RationalVector mass) {
    return RationalMeasure(std::move(space), std::move(mass), true);
  }
  static RationalMeasure dirac(const FiniteSpace& space, std::size_t point);
  static RationalMeasure uniform(const FiniteSpace& space);

  const FiniteSpace& space() const noexcept { return space_; }
  const RationalVector& masses() const noexcept { return mass_; }
  const Rational& mass(std::size_t point) const { return mass_.at(point); }
  bool is_probability() const noexcept { return is_probability_; }
  Rational total() const { return sum(mass_); }

  Rational measure(std::span<const std::size_t> event) const;

  /// Mass of each atom of `sigma`, in atom order.
  RationalVector atom_masses(const SigmaAlgebra& sigma) const;

  friend bool operator==(const RationalMeasure& a, const RationalMeasure& b) {
    return a.space_ == b.space_ && a.mass_ == b.mass_;
  }

 private:
  FiniteSpace space_;
  RationalVector mass_;
  bool is_probability_;
};

/// P(A) = Q(A) for every measurable A (equivalently, on every atom).
bool l1_identical(const SigmaAlgebra& sigma, const RationalMeasure& p, const RationalMeasure& q);

/// Builds a measure on sigma's space that puts each atom's mass on the
/// atom's first point. Canonical representative of an atom-level measure.
RationalMeasure measure_from_atoms(const SigmaAlgebra& sigma, const RationalVector& atom_mass,
                                   bool is_probability);

/// An L¹(reference) element. Values on reference-null points are zero.
class DensityVector {
 public:
  DensityVector(RationalVector values, RationalMeasure reference);

  const FiniteSpace& space() const noexcept { return reference_.space(); }
  const RationalVector& values() const noexcept { return values_; }
  const Rational& value(std::size_t point) const { return values_.at(point); }
  const RationalMeasure& reference() const noexcept { return reference_; }

  /// ∫_A ρ dν
  Rational integral(std::span<const std::size_t> event) const;

  friend bool operator==(const DensityVector& a, const DensityVector& b) {
    return a.reference_ == b.reference_ && a.values_ == b.values_;
  }

 private:
  RationalVector values_;
  RationalMeasure reference_;
};

/// Every σ-atom with mu-mass 0 has p-mass 0.
bool is_absolutely_continuous(const RationalMeasure& p, const RationalMeasure& mu,
                              const SigmaAlgebra& sigma);

/// dp/dmu, constant on atoms. Throws AbsoluteContinuityViolated.
DensityVector radon_nikodym(const RationalMeasure& p, const RationalMeasure& mu,
                            const SigmaAlgebra& sigma);

/// Σ |f − g| · reference. Throws SpaceMismatch if the references differ.
Rational l1_distance(const DensityVector& f, const DensityVector& g);

/// E_ν(ρ | sub): block averages on ν-positive blocks of `sub`, zero on
/// ν-null blocks.
DensityVector conditional_expectation(const DensityVector& rho, const SigmaAlgebra& sub,
                                      const RationalMeasure& nu);

/// As above, additionally checking that `sub` coarsens `fine` (the
/// σ-algebra rho is measurable for). Throws NotACoarsening.
DensityVector conditional_expectation(const DensityVector& rho, const SigmaAlgebra& sub,
                                      const RationalMeasure& nu, const SigmaAlgebra& fine);

}  // namespace statcat
