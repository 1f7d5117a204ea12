#pragma once

#include <optional>
#include <string>
#include <vector>

#include "statcat/measure.hpp"

namespace statcat {

struct NamedMeasure {
  std::string name;
  RationalMeasure measure;
};

/// A finite statistical model (space, σ-algebra, family of distributions).
///
/// Family members are probability measures with unique names. When no
/// dominating measure is given, the uniform mixture of the family serves as
/// the reference; it dominates every member by construction.
class FiniteModel {
 public:
  FiniteModel(SigmaAlgebra sigma, std::vector<NamedMeasure> family,
              std::optional<RationalMeasure> dominating = std::nullopt);

  const FiniteSpace& space() const noexcept { return sigma_.space(); }
  const SigmaAlgebra& sigma() const noexcept { return sigma_; }
  const std::vector<NamedMeasure>& family() const noexcept { return family_; }
  std::size_t size() const noexcept { return family_.size(); }
  const RationalMeasure& member(std::size_t i) const { return family_.at(i).measure; }
  const std::string& name(std::size_t i) const { return family_.at(i).name; }
  std::optional<std::size_t> find(const std::string& name) const;

  const std::optional<RationalMeasure>& dominating() const noexcept { return dominating_; }
  /// The dominating measure if given, else the uniform family mixture.
  const RationalMeasure& reference_measure() const noexcept { return reference_; }

  std::vector<RationalMeasure> measures() const;
  std::vector<RationalMeasure> measures(const std::vector<std::size_t>& indices) const;

 private:
  SigmaAlgebra sigma_;
  std::vector<NamedMeasure> family_;
  std::optional<RationalMeasure> dominating_;
  RationalMeasure reference_;
};

/// Members grouped by equality on every σ-atom. Classes are ordered by their
/// lowest member, which is also the class representative.
struct L1IdentityPartition {
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> class_of;

  std::size_t class_count() const noexcept { return classes.size(); }
  std::vector<std::size_t> representatives() const;
};

L1IdentityPartition l1_identity_partition(const SigmaAlgebra& sigma,
                                          const std::vector<RationalMeasure>& family);
L1IdentityPartition l1_identity_partition(const FiniteModel& model);

/// The model restricted to the given members (dominating measure kept).
FiniteModel submodel(const FiniteModel& model, const std::vector<std::size_t>& indices);

}  // namespace statcat
