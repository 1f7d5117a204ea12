#include "statcat/kernel.hpp"

#include <algorithm>

#include "statcat/error.hpp"

namespace statcat {

MeasurableMap::MeasurableMap(SigmaAlgebra domain, SigmaAlgebra codomain,
                             std::vector<std::size_t> assignment)
    : domain_(std::move(domain)), codomain_(std::move(codomain)),
      assignment_(std::move(assignment)) {
  if (assignment_.size() != domain_.space().size()) {
    throw DimensionMismatch("map assigns " + std::to_string(assignment_.size()) +
                            " points but the domain has " +
                            std::to_string(domain_.space().size()));
  }
  for (auto y : assignment_) {
    if (y >= codomain_.space().size()) {
      throw DimensionMismatch("map image index " + std::to_string(y) + " outside the codomain");
    }
  }
  // Preimage of each codomain atom must be a union of domain atoms.
  for (std::size_t b = 0; b < codomain_.atom_count(); ++b) {
    Event preimage;
    for (std::size_t x = 0; x < assignment_.size(); ++x) {
      if (codomain_.atom_of(assignment_[x]) == b) preimage.push_back(x);
    }
    if (!domain_.is_measurable(preimage)) {
      throw NonMeasurableMap(b, "preimage of the codomain atom containing \"" +
                                    codomain_.space().label(codomain_.atoms()[b].front()) +
                                    "\" is not measurable");
    }
  }
  atom_map_.resize(domain_.atom_count());
  for (std::size_t a = 0; a < domain_.atom_count(); ++a) {
    atom_map_[a] = codomain_.atom_of(assignment_[domain_.atoms()[a].front()]);
  }
}

MeasurableMap MeasurableMap::identity(const SigmaAlgebra& sigma) {
  std::vector<std::size_t> id(sigma.space().size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
  return MeasurableMap(sigma, sigma, std::move(id));
}

bool MeasurableMap::is_bimeasurable() const {
  if (domain_.atom_count() != codomain_.atom_count()) return false;
  std::vector<char> hit(codomain_.atom_count(), 0);
  for (auto b : atom_map_) {
    if (hit[b]) return false;
    hit[b] = 1;
  }
  return true;
}

MeasurableMap compose(const MeasurableMap& outer, const MeasurableMap& inner) {
  if (!(inner.codomain() == outer.domain())) {
    throw SpaceMismatch("cannot compose maps: inner codomain differs from outer domain");
  }
  std::vector<std::size_t> a(inner.assignment().size());
  for (std::size_t x = 0; x < a.size(); ++x) a[x] = outer(inner(x));
  return MeasurableMap(inner.domain(), outer.codomain(), std::move(a));
}

RationalMeasure pushforward(const MeasurableMap& map, const RationalMeasure& mu) {
  if (!(mu.space() == map.domain().space())) {
    throw SpaceMismatch("pushforward: measure is not on the map's domain");
  }
  RationalVector out(map.codomain().space().size(), Rational(0));
  for (std::size_t x = 0; x < mu.masses().size(); ++x) out[map(x)] += mu.mass(x);
  return RationalMeasure(map.codomain().space(), std::move(out), mu.is_probability());
}

MarkovKernel::MarkovKernel(SigmaAlgebra domain, SigmaAlgebra codomain, RationalMatrix rows)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), rows_(std::move(rows)) {
  if (rows_.size() != domain_.atom_count()) {
    throw InvalidKernel("kernel has " + std::to_string(rows_.size()) + " rows for " +
                        std::to_string(domain_.atom_count()) + " domain atoms");
  }
  for (std::size_t a = 0; a < rows_.size(); ++a) {
    auto& row = rows_[a];
    if (row.size() != codomain_.atom_count()) {
      throw InvalidKernel("kernel row " + std::to_string(a) + " has wrong length");
    }
    for (auto& v : row) {
      v.canonicalize();
      if (sgn(v) < 0) throw InvalidKernel("negative kernel entry in row " + std::to_string(a));
    }
    if (sum(row) != 1) {
      throw InvalidKernel("kernel row " + std::to_string(a) + " sums to " + to_string(sum(row)));
    }
  }
}

MarkovKernel MarkovKernel::identity(const SigmaAlgebra& sigma) {
  RationalMatrix rows(sigma.atom_count(), RationalVector(sigma.atom_count(), Rational(0)));
  for (std::size_t a = 0; a < rows.size(); ++a) rows[a][a] = 1;
  return MarkovKernel(sigma, sigma, std::move(rows));
}

MarkovKernel kernel_from_map(const MeasurableMap& map) {
  RationalMatrix rows(map.domain().atom_count(),
                      RationalVector(map.codomain().atom_count(), Rational(0)));
  for (std::size_t a = 0; a < rows.size(); ++a) rows[a][map.atom_map()[a]] = 1;
  return MarkovKernel(map.domain(), map.codomain(), std::move(rows));
}

RationalVector apply_kernel_atoms(const MarkovKernel& k, const RationalVector& atom_mass) {
  if (atom_mass.size() != k.domain().atom_count()) {
    throw DimensionMismatch("atom vector does not match the kernel's domain");
  }
  RationalVector out(k.codomain().atom_count(), Rational(0));
  for (std::size_t a = 0; a < atom_mass.size(); ++a) {
    if (sgn(atom_mass[a]) == 0) continue;
    for (std::size_t b = 0; b < out.size(); ++b) out[b] += atom_mass[a] * k(a, b);
  }
  return out;
}

RationalMeasure apply_kernel(const MarkovKernel& k, const RationalMeasure& mu) {
  if (!(mu.space() == k.domain().space())) {
    throw SpaceMismatch("apply_kernel: measure is not on the kernel's domain");
  }
  return measure_from_atoms(k.codomain(), apply_kernel_atoms(k, mu.atom_masses(k.domain())),
                            mu.is_probability());
}

MarkovKernel compose(const MarkovKernel& first, const MarkovKernel& second) {
  if (!(first.codomain() == second.domain())) {
    throw SpaceMismatch("cannot compose kernels: intermediate spaces differ");
  }
  RationalMatrix rows(first.domain().atom_count(),
                      RationalVector(second.codomain().atom_count(), Rational(0)));
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t m = 0; m < first.codomain().atom_count(); ++m) {
      if (sgn(first(a, m)) == 0) continue;
      for (std::size_t c = 0; c < rows[a].size(); ++c) rows[a][c] += first(a, m) * second(m, c);
    }
  }
  return MarkovKernel(first.domain(), second.codomain(), std::move(rows));
}

}  // namespace statcat
