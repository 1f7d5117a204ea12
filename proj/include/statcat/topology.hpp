/**
 * @file topology.hpp
 * @brief Estimands, pseudometrics on model families, finite topologies,
 *        Kolmogorov quotients and quotient homeomorphism search.
 *
 * Finite topologies are stored as bit masks over a ground set of at most
 * 63 indices. Every finite topology is determined by its minimal
 * neighbourhoods U_x (intersection of all opens containing x); the opens
 * are exactly the unions of these.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "statcat/model.hpp"
#include "statcat/parallel.hpp"

namespace statcat {

struct Estimand {
  enum class Kind { likelihood, event_probability, moment };

  Kind kind = Kind::likelihood;
  std::size_t sample_length = 1;
  /// Per-point weights, moment kind only.
  RationalVector weights;

  static Estimand likelihood(std::size_t n);
  static Estimand event_probability();
  static Estimand moment(RationalVector weights, std::size_t n = 1);
};

/// Throws NonMeasurableEvent, DimensionMismatch (event count or weights).
Rational evaluate_estimand(const Estimand& e, const RationalMeasure& p,
                           const std::vector<Event>& events, const SigmaAlgebra& sigma);

/// d(i, j) = Σ over n-tuples of atoms of |ε_i − ε_j| times the product of
/// the tuple's reference masses.
RationalMatrix estimand_pseudometric(const Estimand& e, const FiniteModel& model);

using OpenSet = std::uint64_t;

class FiniteTopology {
 public:
  static constexpr std::size_t kMaxGround = 63;

  /// Throws InvalidTopology unless the opens contain ∅ and the ground set
  /// and are closed under pairwise union and intersection.
  FiniteTopology(std::size_t size, std::vector<OpenSet> opens);

  /// Coarsest topology containing every subbase set.
  static FiniteTopology from_subbase(std::size_t size, const std::vector<OpenSet>& subbase);
  static FiniteTopology discrete(std::size_t size);
  static FiniteTopology indiscrete(std::size_t size);

  std::size_t size() const noexcept { return size_; }
  OpenSet ground() const noexcept;
  /// Sorted ascending as integers.
  const std::vector<OpenSet>& opens() const noexcept { return opens_; }
  bool is_open(OpenSet s) const;
  OpenSet minimal_neighbourhood(std::size_t x) const { return minimal_.at(x); }
  bool indistinguishable(std::size_t x, std::size_t y) const {
    return minimal_.at(x) == minimal_.at(y);
  }
  bool is_t0() const;

  friend bool operator==(const FiniteTopology& a, const FiniteTopology& b) {
    return a.size_ == b.size_ && a.opens_ == b.opens_;
  }

 private:
  FiniteTopology(std::size_t size, std::vector<OpenSet> opens, std::vector<OpenSet> minimal);

  std::size_t size_;
  std::vector<OpenSet> opens_;
  std::vector<OpenSet> minimal_;
};

/// Topology generated by all balls {j : d(i,j) < r}, r ranging over the
/// matrix entries. Throws MalformedMatrix unless `dist` is a square
/// pseudometric (symmetric, nonnegative, zero diagonal, triangle
/// inequality).
FiniteTopology coarsest_topology(const RationalMatrix& dist);

/// Coarsest topology of the likelihood(1) pseudometric on the family.
FiniteTopology canonical_topology(const FiniteModel& model);

struct QuotientMap {
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> projection;
  FiniteTopology quotient;
};

/// Classes ordered by smallest member.
QuotientMap kolmogorov_quotient(const FiniteTopology& t);

/// Bijection from the classes of KQ(a) to those of KQ(b) mapping opens onto
/// opens (lexicographically first one), or nullopt. Throws
/// SearchBoundExceeded when a search is needed over more than `bound`
/// classes.
std::optional<std::vector<std::size_t>> is_kolmogorov_equivalent(
    const FiniteTopology& a, const FiniteTopology& b, std::size_t bound = 8,
    const ExecutionPolicy& policy = {});

/// Image of every open under `bijection` is open in b and the open counts
/// match.
bool is_homeomorphism(const FiniteTopology& a, const FiniteTopology& b,
                      const std::vector<std::size_t>& bijection);

}  // namespace statcat
