// Shared fixtures and seeded random generators for the test binaries.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "statcat/kernel.hpp"
#include "statcat/model.hpp"
#include "statcat/topology.hpp"

namespace fixture {

using namespace statcat;

inline Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline FiniteSpace coin_space() { return FiniteSpace({"00", "01", "10", "11"}); }
inline FiniteSpace sum_space() { return FiniteSpace({"0", "1", "2"}); }
inline FiniteSpace bit_space() { return FiniteSpace({"0", "1"}); }

/// Two independent tosses with P(heads) = p; points ordered 00, 01, 10, 11.
inline RationalMeasure coin_pair(const Rational& p) {
  const Rational r = 1 - p;
  return RationalMeasure::probability(coin_space(), {r * r, r * p, p * r, p * p});
}

inline FiniteModel coinpair_model() {
  std::vector<NamedMeasure> fam;
  for (auto [name, p] : {std::pair{"p=1/4", q(1, 4)}, {"p=1/2", q(1, 2)}, {"p=3/4", q(3, 4)}}) {
    fam.push_back({name, coin_pair(p)});
  }
  return FiniteModel(SigmaAlgebra::power_set(coin_space()), std::move(fam));
}

inline MeasurableMap sum_map() {
  return MeasurableMap(SigmaAlgebra::power_set(coin_space()),
                       SigmaAlgebra::power_set(sum_space()), {0, 1, 1, 2});
}

inline MeasurableMap first_map() {
  return MeasurableMap(SigmaAlgebra::power_set(coin_space()),
                       SigmaAlgebra::power_set(bit_space()), {0, 0, 1, 1});
}

inline RationalMeasure bernoulli(const Rational& p) {
  return RationalMeasure::probability(bit_space(), {1 - p, p});
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  FiniteSpace space(std::size_t n, const std::string& prefix = "s") {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
    return FiniteSpace(std::move(labels));
  }

  SigmaAlgebra sigma(const FiniteSpace& s, double power_set_bias = 0.5) {
    if (chance(power_set_bias)) return SigmaAlgebra::power_set(s);
    const std::size_t k = between(1, s.size());
    std::vector<Block> blocks(k);
    for (std::size_t p = 0; p < s.size(); ++p) blocks[p < k ? p : below(k)].push_back(p);
    return SigmaAlgebra(s, std::move(blocks));
  }

  /// Small integer weights, some zero, normalised. At least one point
  /// carries mass.
  RationalVector weights(std::size_t n, double zero_chance = 0.25, long max_weight = 6) {
    RationalVector w(n);
    bool any = false;
    for (auto& v : w) {
      v = chance(zero_chance) ? 0 : static_cast<long>(between(1, max_weight));
      any = any || sgn(v) > 0;
    }
    if (!any) w[below(n)] = 1;
    const Rational total = sum(w);
    for (auto& v : w) v /= total;
    return w;
  }

  RationalMeasure probability(const FiniteSpace& s, double zero_chance = 0.25) {
    return RationalMeasure::probability(s, weights(s.size(), zero_chance));
  }

  /// Each domain atom goes to one random codomain atom; its points land on
  /// random points of that atom.
  MeasurableMap map(const SigmaAlgebra& dom, const SigmaAlgebra& cod) {
    std::vector<std::size_t> assignment(dom.space().size());
    for (const auto& atom : dom.atoms()) {
      const auto& target = cod.atoms()[below(cod.atom_count())];
      for (auto p : atom) assignment[p] = target[below(target.size())];
    }
    return MeasurableMap(dom, cod, std::move(assignment));
  }

  FiniteModel model(const SigmaAlgebra& sigma, std::size_t members, double dup_chance = 0.2) {
    std::vector<NamedMeasure> fam;
    for (std::size_t i = 0; i < members; ++i) {
      auto m = (i > 0 && chance(dup_chance)) ? fam[below(i)].measure
                                            : probability(sigma.space());
      fam.push_back({"m" + std::to_string(i), std::move(m)});
    }
    return FiniteModel(sigma, std::move(fam));
  }

  /// Family P = Σ_y Q(y)·c(·|y) with fiber conditionals c fixed across
  /// members, so `map` is sufficient by construction.
  FiniteModel sufficient_model(const MeasurableMap& map, std::size_t members) {
    const auto& dom = map.domain();
    const auto& cod = map.codomain();
    const std::size_t nx = dom.atom_count();
    const std::size_t ny = cod.atom_count();
    // Conditional of each domain atom given its codomain atom.
    RationalVector cond(nx, Rational(0));
    std::vector<std::size_t> hit;
    for (std::size_t y = 0; y < ny; ++y) {
      std::vector<std::size_t> fiber;
      for (std::size_t x = 0; x < nx; ++x) {
        if (map.atom_map()[x] == y) fiber.push_back(x);
      }
      if (fiber.empty()) continue;
      hit.push_back(y);
      const auto w = weights(fiber.size(), 0.2);
      for (std::size_t i = 0; i < fiber.size(); ++i) cond[fiber[i]] = w[i];
    }
    std::vector<NamedMeasure> fam;
    for (std::size_t i = 0; i < members; ++i) {
      // Q only charges codomain atoms that some domain atom reaches.
      const auto w = weights(hit.size(), 0.3);
      RationalVector qy(ny, Rational(0));
      for (std::size_t h = 0; h < hit.size(); ++h) qy[hit[h]] = w[h];
      RationalVector mass(dom.space().size(), Rational(0));
      for (std::size_t x = 0; x < nx; ++x) {
        const auto& atom = dom.atoms()[x];
        const Rational atom_mass = qy[map.atom_map()[x]] * cond[x];
        for (auto p : atom) mass[p] = atom_mass / static_cast<long>(atom.size());
      }
      fam.push_back({"m" + std::to_string(i), RationalMeasure::probability(dom.space(), mass)});
    }
    return FiniteModel(dom, std::move(fam));
  }

  /// Pushforward family on the map's codomain, optionally permuted and
  /// with a duplicated member.
  FiniteModel image_model(const FiniteModel& a, const MeasurableMap& map) {
    std::vector<RationalMeasure> images;
    for (std::size_t i = 0; i < a.size(); ++i) images.push_back(pushforward(map, a.member(i)));
    std::shuffle(images.begin(), images.end(), rng_);
    if (chance(0.3)) images.push_back(images[below(images.size())]);
    std::vector<NamedMeasure> fam;
    for (std::size_t i = 0; i < images.size(); ++i) fam.push_back({"q" + std::to_string(i), images[i]});
    return FiniteModel(map.codomain(), std::move(fam));
  }

  FiniteTopology topology(std::size_t n) {
    std::vector<OpenSet> subbase;
    const std::size_t k = below(n + 2);
    const OpenSet full = n == 0 ? 0 : (~OpenSet{0} >> (64 - n));
    for (std::size_t i = 0; i < k; ++i) subbase.push_back(rng_() & full);
    return FiniteTopology::from_subbase(n, subbase);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace fixture
