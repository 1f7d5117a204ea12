#include "statcat/model.hpp"

#include <map>
#include <set>

#include "statcat/error.hpp"

namespace statcat {

namespace {

RationalMeasure mixture(const SigmaAlgebra& sigma, const std::vector<NamedMeasure>& family) {
  RationalVector m(sigma.space().size(), Rational(0));
  const Rational w(1, family.size());
  for (const auto& member : family) {
    for (std::size_t p = 0; p < m.size(); ++p) m[p] += w * member.measure.mass(p);
  }
  return RationalMeasure::probability(sigma.space(), std::move(m));
}

}  // namespace

FiniteModel::FiniteModel(SigmaAlgebra sigma, std::vector<NamedMeasure> family,
                         std::optional<RationalMeasure> dominating)
    : sigma_(std::move(sigma)),
      family_(std::move(family)),
      dominating_(std::move(dominating)),
      reference_(RationalMeasure::uniform(sigma_.space())) {
  if (family_.empty()) throw InvariantError("a statistical model needs at least one distribution");
  std::set<std::string> names;
  for (const auto& m : family_) {
    if (!names.insert(m.name).second) {
      throw InvariantError("duplicate family member name \"" + m.name + "\"");
    }
    if (!(m.measure.space() == sigma_.space())) {
      throw SpaceMismatch("family member \"" + m.name + "\" lives on a different space");
    }
    if (!m.measure.is_probability()) {
      throw InvariantError("family member \"" + m.name + "\" is not a probability measure");
    }
  }
  if (dominating_) {
    if (!(dominating_->space() == sigma_.space())) {
      throw SpaceMismatch("dominating measure lives on a different space");
    }
    for (const auto& m : family_) {
      if (!is_absolutely_continuous(m.measure, *dominating_, sigma_)) {
        throw InvariantError("family member \"" + m.name +
                             "\" is not absolutely continuous w.r.t. the dominating measure");
      }
    }
    reference_ = *dominating_;
  } else {
    reference_ = mixture(sigma_, family_);
  }
}

std::optional<std::size_t> FiniteModel::find(const std::string& name) const {
  for (std::size_t i = 0; i < family_.size(); ++i) {
    if (family_[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<RationalMeasure> FiniteModel::measures() const {
  std::vector<RationalMeasure> out;
  out.reserve(family_.size());
  for (const auto& m : family_) out.push_back(m.measure);
  return out;
}

std::vector<RationalMeasure> FiniteModel::measures(const std::vector<std::size_t>& indices) const {
  std::vector<RationalMeasure> out;
  out.reserve(indices.size());
  for (auto i : indices) out.push_back(member(i));
  return out;
}

std::vector<std::size_t> L1IdentityPartition::representatives() const {
  std::vector<std::size_t> out;
  out.reserve(classes.size());
  for (const auto& c : classes) out.push_back(c.front());
  return out;
}

L1IdentityPartition l1_identity_partition(const SigmaAlgebra& sigma,
                                          const std::vector<RationalMeasure>& family) {
  L1IdentityPartition out;
  out.class_of.resize(family.size());
  std::map<RationalVector, std::size_t> seen;
  for (std::size_t i = 0; i < family.size(); ++i) {
    auto key = family[i].atom_masses(sigma);
    auto [it, inserted] = seen.emplace(std::move(key), out.classes.size());
    if (inserted) out.classes.emplace_back();
    out.classes[it->second].push_back(i);
    out.class_of[i] = it->second;
  }
  return out;
}

L1IdentityPartition l1_identity_partition(const FiniteModel& model) {
  return l1_identity_partition(model.sigma(), model.measures());
}

FiniteModel submodel(const FiniteModel& model, const std::vector<std::size_t>& indices) {
  std::vector<NamedMeasure> family;
  for (auto i : indices) family.push_back(model.family().at(i));
  return FiniteModel(model.sigma(), std::move(family), model.dominating());
}

}  // namespace statcat
