/**
 * @file kernel.hpp
 * @brief Measurable maps and Markov kernels (transition operators) between
 *        finite measurable spaces.
 *
 * A measurable map sends each domain atom into exactly one codomain atom, so
 * it induces a map on atoms. Kernels are row-stochastic matrices indexed by
 * atoms: row = domain atom, column = codomain atom.
 */
#pragma once

#include <cstddef>
#include <vector>

#include "statcat/measure.hpp"

namespace statcat {

class MeasurableMap {
 public:
  /// `assignment[x]` is the codomain point of domain point x. Throws
  /// DimensionMismatch when not total and NonMeasurableMap (naming the
  /// first codomain atom whose preimage is not a union of domain atoms).
  MeasurableMap(SigmaAlgebra domain, SigmaAlgebra codomain, std::vector<std::size_t> assignment);

  static MeasurableMap identity(const SigmaAlgebra& sigma);

  const SigmaAlgebra& domain() const noexcept { return domain_; }
  const SigmaAlgebra& codomain() const noexcept { return codomain_; }
  const std::vector<std::size_t>& assignment() const noexcept { return assignment_; }
  std::size_t operator()(std::size_t point) const { return assignment_.at(point); }

  /// Domain atom -> codomain atom.
  const std::vector<std::size_t>& atom_map() const noexcept { return atom_map_; }

  /// The induced atom map is a bijection, so the map is invertible up to
  /// the atom structure on both sides.
  bool is_bimeasurable() const;

  friend bool operator==(const MeasurableMap& a, const MeasurableMap& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ &&
           a.assignment_ == b.assignment_;
  }

 private:
  SigmaAlgebra domain_;
  SigmaAlgebra codomain_;
  std::vector<std::size_t> assignment_;
  std::vector<std::size_t> atom_map_;
};

/// outer ∘ inner. Requires inner.codomain() == outer.domain().
MeasurableMap compose(const MeasurableMap& outer, const MeasurableMap& inner);

/// (T_*μ)(y) = Σ_{x: T(x)=y} μ(x), per point.
RationalMeasure pushforward(const MeasurableMap& map, const RationalMeasure& mu);

class MarkovKernel {
 public:
  /// rows[a][b] = probability of codomain atom b from domain atom a.
  /// Throws InvalidKernel unless every row is nonnegative and sums to 1.
  MarkovKernel(SigmaAlgebra domain, SigmaAlgebra codomain, RationalMatrix rows);

  static MarkovKernel identity(const SigmaAlgebra& sigma);

  const SigmaAlgebra& domain() const noexcept { return domain_; }
  const SigmaAlgebra& codomain() const noexcept { return codomain_; }
  const RationalMatrix& rows() const noexcept { return rows_; }
  const Rational& operator()(std::size_t from_atom, std::size_t to_atom) const {
    return rows_.at(from_atom).at(to_atom);
  }

  friend bool operator==(const MarkovKernel& a, const MarkovKernel& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.rows_ == b.rows_;
  }

 private:
  SigmaAlgebra domain_;
  SigmaAlgebra codomain_;
  RationalMatrix rows_;
};

/// Deterministic kernel: the row of atom a is the Dirac row at the atom
/// containing T(a).
MarkovKernel kernel_from_map(const MeasurableMap& map);

/// (τμ)(b) = Σ_a μ(a)·k(a, b) on atoms.
RationalVector apply_kernel_atoms(const MarkovKernel& k, const RationalVector& atom_mass);

/// Measure form of apply_kernel_atoms: each codomain atom's mass sits on the
/// atom's first point (identical to any other representative on the
/// codomain σ-algebra). Throws SpaceMismatch.
RationalMeasure apply_kernel(const MarkovKernel& k, const RationalMeasure& mu);

/// first then second: X -> Y -> Z.
MarkovKernel compose(const MarkovKernel& first, const MarkovKernel& second);

}  // namespace statcat
