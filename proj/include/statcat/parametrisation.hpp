#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "statcat/model.hpp"
#include "statcat/parallel.hpp"
#include "statcat/report.hpp"

namespace statcat {

enum class StructuralCategory { Set, FinTop };

/// "Set" / "FinTop"; throws UnsupportedCategory for anything else.
StructuralCategory parse_category(const std::string& name);
std::string to_string(StructuralCategory c);

/// Finite parameter set Θ ⊂ Q^d with θ ↦ family member index.
class Parametrisation {
 public:
  /// Throws ConstructionError on an empty Θ, mixed or zero dimension,
  /// equal parameter vectors, or a size mismatch with `assignment`.
  Parametrisation(std::vector<RationalVector> parameters, std::vector<std::size_t> assignment);

  const std::vector<RationalVector>& parameters() const noexcept { return parameters_; }
  const std::vector<std::size_t>& assignment() const noexcept { return assignment_; }
  std::size_t cardinality() const noexcept { return parameters_.size(); }
  std::size_t length() const noexcept { return parameters_.front().size(); }

 private:
  std::vector<RationalVector> parameters_;
  std::vector<std::size_t> assignment_;
};

struct ParamReport {
  bool identifiable = false;
  bool injective = false;
  bool surjective = false;
  std::size_t cardinality = 0;
  std::size_t length = 0;
  /// Dimension of the affine hull of Θ.
  std::size_t affine_rank = 0;
  std::size_t class_count = 0;
  /// Two parameter indices landing in one L¹-class.
  std::optional<std::pair<std::size_t, std::size_t>> collision;
  /// Lowest L¹-class (by representative) that no parameter reaches.
  std::optional<std::size_t> uncovered_class;
};

/// Throws IndexOutOfRange on an assignment outside the family.
ParamReport analyze_parametrisation(const Parametrisation& theta, const FiniteModel& model);

/// Length 1 with Θ = {(0), (1), ...} on the class representatives. Only the
/// Set category is supported.
std::pair<std::size_t, Parametrisation> minimal_length(const FiniteModel& model,
                                                       StructuralCategory category);

/// Set: equal L¹-class counts, certificate = class bijection in order.
/// FinTop: canonical topologies are Kolmogorov equivalent, certificate =
/// the quotient bijection.
CheckReport structural_equivalence(const FiniteModel& a, const FiniteModel& b,
                                   StructuralCategory category, std::size_t bound = 8,
                                   const ExecutionPolicy& policy = {});

}  // namespace statcat
