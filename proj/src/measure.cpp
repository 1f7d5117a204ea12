#include "statcat/measure.hpp"

#include <algorithm>
#include <unordered_set>

#include "statcat/error.hpp"

namespace statcat {

// --- FiniteSpace ------------------------------------------------------------

FiniteSpace::FiniteSpace(std::vector<std::string> labels) {
  if (labels.empty()) throw InvalidSpace("a finite space needs at least one point");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) throw InvalidSpace("duplicate point label \"" + l + "\"");
  }
  labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
}

const std::string& FiniteSpace::label(std::size_t i) const {
  if (i >= labels_->size()) throw IndexOutOfRange("point index " + std::to_string(i));
  return (*labels_)[i];
}

std::optional<std::size_t> FiniteSpace::find(std::string_view label) const {
  const auto it = std::find(labels_->begin(), labels_->end(), label);
  if (it == labels_->end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_->begin());
}

// --- SigmaAlgebra -----------------------------------------------------------

SigmaAlgebra::SigmaAlgebra(FiniteSpace space, std::vector<Block> partition)
    : space_(std::move(space)), atom_of_(space_.size(), space_.size()) {
  for (auto& block : partition) {
    if (block.empty()) throw InvalidSigmaAlgebra("empty partition block");
    std::sort(block.begin(), block.end());
  }
  std::sort(partition.begin(), partition.end(),
            [](const Block& a, const Block& b) { return a.front() < b.front(); });
  for (std::size_t a = 0; a < partition.size(); ++a) {
    for (auto p : partition[a]) {
      if (p >= space_.size()) {
        throw InvalidSigmaAlgebra("point index " + std::to_string(p) + " out of range");
      }
      if (atom_of_[p] != space_.size()) {
        throw InvalidSigmaAlgebra("point \"" + space_.label(p) + "\" in two blocks");
      }
      atom_of_[p] = a;
    }
  }
  for (std::size_t p = 0; p < space_.size(); ++p) {
    if (atom_of_[p] == space_.size()) {
      throw InvalidSigmaAlgebra("point \"" + space_.label(p) + "\" not covered by the partition");
    }
  }
  atoms_ = std::move(partition);
}

SigmaAlgebra SigmaAlgebra::power_set(const FiniteSpace& space) {
  std::vector<Block> blocks(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) blocks[i] = {i};
  return SigmaAlgebra(space, std::move(blocks));
}

SigmaAlgebra SigmaAlgebra::trivial(const FiniteSpace& space) {
  Block all(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) all[i] = i;
  return SigmaAlgebra(space, {all});
}

bool SigmaAlgebra::is_measurable(std::span<const std::size_t> event) const {
  std::vector<char> in(space_.size(), 0);
  for (auto p : event) {
    if (p >= space_.size()) throw IndexOutOfRange("point index " + std::to_string(p));
    in[p] = 1;
  }
  for (const auto& block : atoms_) {
    const char first = in[block.front()];
    for (auto p : block) {
      if (in[p] != first) return false;
    }
  }
  return true;
}

bool SigmaAlgebra::is_coarsening_of(const SigmaAlgebra& finer) const {
  if (!(space_ == finer.space_)) return false;
  for (const auto& block : finer.atoms_) {
    const auto a = atom_of_[block.front()];
    for (auto p : block) {
      if (atom_of_[p] != a) return false;
    }
  }
  return true;
}

Event SigmaAlgebra::event_of_atoms(std::span<const std::size_t> atom_indices) const {
  Event out;
  for (auto a : atom_indices) {
    const auto& block = atoms_.at(a);
    out.insert(out.end(), block.begin(), block.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Block> atoms(const SigmaAlgebra& sigma) { return sigma.atoms(); }

// --- RationalMeasure --------------------------------------------------------

RationalMeasure::RationalMeasure(FiniteSpace space, RationalVector mass, bool is_probability)
    : space_(std::move(space)), mass_(std::move(mass)), is_probability_(is_probability) {
  if (mass_.size() != space_.size()) {
    throw InvalidMeasure("measure has " + std::to_string(mass_.size()) + " masses for " +
                         std::to_string(space_.size()) + " points");
  }
  for (std::size_t i = 0; i < mass_.size(); ++i) {
    mass_[i].canonicalize();
    if (sgn(mass_[i]) < 0) {
      throw InvalidMeasure("negative mass " + to_string(mass_[i]) + " at \"" + space_.label(i) +
                           "\"");
    }
  }
  if (is_probability_ && total() != 1) {
    throw InvalidMeasure("probability masses sum to " + to_string(total()) + ", not 1");
  }
}

RationalMeasure RationalMeasure::dirac(const FiniteSpace& space, std::size_t point) {
  RationalVector m(space.size(), Rational(0));
  m.at(point) = 1;
  return probability(space, std::move(m));
}

RationalMeasure RationalMeasure::uniform(const FiniteSpace& space) {
  return probability(space, RationalVector(space.size(), Rational(1, space.size())));
}

Rational RationalMeasure::measure(std::span<const std::size_t> event) const {
  Rational total = 0;
  for (auto p : event) total += mass_.at(p);
  return total;
}

RationalVector RationalMeasure::atom_masses(const SigmaAlgebra& sigma) const {
  if (!(sigma.space() == space_)) throw SpaceMismatch("measure and σ-algebra on different spaces");
  RationalVector out(sigma.atom_count(), Rational(0));
  for (std::size_t p = 0; p < mass_.size(); ++p) out[sigma.atom_of(p)] += mass_[p];
  return out;
}

bool l1_identical(const SigmaAlgebra& sigma, const RationalMeasure& p, const RationalMeasure& q) {
  return p.atom_masses(sigma) == q.atom_masses(sigma);
}

RationalMeasure measure_from_atoms(const SigmaAlgebra& sigma, const RationalVector& atom_mass,
                                   bool is_probability) {
  if (atom_mass.size() != sigma.atom_count()) {
    throw DimensionMismatch("atom mass vector does not match the σ-algebra");
  }
  RationalVector m(sigma.space().size(), Rational(0));
  for (std::size_t a = 0; a < atom_mass.size(); ++a) m[sigma.atoms()[a].front()] = atom_mass[a];
  return RationalMeasure(sigma.space(), std::move(m), is_probability);
}

// --- DensityVector ----------------------------------------------------------

DensityVector::DensityVector(RationalVector values, RationalMeasure reference)
    : values_(std::move(values)), reference_(std::move(reference)) {
  if (values_.size() != reference_.space().size()) {
    throw DimensionMismatch("density length does not match its reference space");
  }
  for (std::size_t p = 0; p < values_.size(); ++p) {
    if (sgn(reference_.mass(p)) == 0) values_[p] = 0;
  }
}

Rational DensityVector::integral(std::span<const std::size_t> event) const {
  Rational total = 0;
  for (auto p : event) total += values_.at(p) * reference_.mass(p);
  return total;
}

// --- operations -------------------------------------------------------------

namespace {

void require_same_space(const RationalMeasure& a, const RationalMeasure& b,
                        const SigmaAlgebra& sigma) {
  if (!(a.space() == b.space()) || !(a.space() == sigma.space())) {
    throw SpaceMismatch("measures and σ-algebra must share one space");
  }
}

}  // namespace

bool is_absolutely_continuous(const RationalMeasure& p, const RationalMeasure& mu,
                              const SigmaAlgebra& sigma) {
  require_same_space(p, mu, sigma);
  const auto pm = p.atom_masses(sigma);
  const auto mm = mu.atom_masses(sigma);
  for (std::size_t a = 0; a < pm.size(); ++a) {
    if (sgn(mm[a]) == 0 && sgn(pm[a]) != 0) return false;
  }
  return true;
}

DensityVector radon_nikodym(const RationalMeasure& p, const RationalMeasure& mu,
                            const SigmaAlgebra& sigma) {
  require_same_space(p, mu, sigma);
  const auto pm = p.atom_masses(sigma);
  const auto mm = mu.atom_masses(sigma);
  RationalVector d(sigma.space().size(), Rational(0));
  for (std::size_t a = 0; a < pm.size(); ++a) {
    if (sgn(mm[a]) == 0) {
      if (sgn(pm[a]) != 0) {
        throw AbsoluteContinuityViolated(
            a, "atom containing \"" + sigma.space().label(sigma.atoms()[a].front()) +
                   "\" has zero reference mass but positive mass " + to_string(pm[a]));
      }
      continue;
    }
    const Rational q = pm[a] / mm[a];
    for (auto point : sigma.atoms()[a]) d[point] = q;
  }
  return DensityVector(std::move(d), mu);
}

Rational l1_distance(const DensityVector& f, const DensityVector& g) {
  if (!(f.reference() == g.reference())) {
    throw SpaceMismatch("l1_distance needs densities with the same reference measure");
  }
  Rational total = 0;
  for (std::size_t p = 0; p < f.values().size(); ++p) {
    total += abs(f.value(p) - g.value(p)) * f.reference().mass(p);
  }
  return total;
}

DensityVector conditional_expectation(const DensityVector& rho, const SigmaAlgebra& sub,
                                      const RationalMeasure& nu) {
  if (!(rho.reference() == nu)) {
    throw SpaceMismatch("conditional expectation: density reference differs from ν");
  }
  if (!(sub.space() == nu.space())) {
    throw NotACoarsening("sub-σ-algebra lives on a different space");
  }
  RationalVector out(nu.space().size(), Rational(0));
  for (const auto& block : sub.atoms()) {
    const Rational mass = nu.measure(block);
    if (sgn(mass) == 0) continue;
    const Rational mean = rho.integral(block) / mass;
    for (auto p : block) out[p] = mean;
  }
  return DensityVector(std::move(out), nu);
}

DensityVector conditional_expectation(const DensityVector& rho, const SigmaAlgebra& sub,
                                      const RationalMeasure& nu, const SigmaAlgebra& fine) {
  if (!sub.is_coarsening_of(fine)) {
    throw NotACoarsening("conditioning σ-algebra is not a coarsening of the density's σ-algebra");
  }
  return conditional_expectation(rho, sub, nu);
}

}  // namespace statcat
