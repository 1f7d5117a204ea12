#include <doctest.h>

#include <numeric>
#include <set>

#include "statcat/bayes.hpp"
#include "statcat/error.hpp"
#include "statcat/morphism.hpp"
#include "support.hpp"

using namespace statcat;
using fixture::q;

namespace {

std::vector<ReverseKernelPair> pairs_of(const FiniteModel& src, const MeasurableMap& map) {
  std::vector<ReverseKernelPair> pairs;
  for (std::size_t i = 0; i < src.size(); ++i) pairs.push_back({src.member(i), pushforward(map, src.member(i))});
  return pairs;
}

// Rebuilds the row-sum and pair constraints from scratch and checks that the
// multipliers separate: y'A <= 0 column by column and y'b > 0.
bool farkas_separates(const FarkasCertificate& cert, const std::vector<ReverseKernelPair>& pairs,
                      const SigmaAlgebra& xs, const SigmaAlgebra& ys) {
  const std::size_t nx = xs.atom_count(), ny = ys.atom_count();
  if (cert.multipliers.size() != ny + pairs.size() * nx) return false;
  Rational yb = 0;
  for (std::size_t y = 0; y < ny; ++y) yb += cert.multipliers[y];
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto src = pairs[i].source.atom_masses(xs);
    for (std::size_t x = 0; x < nx; ++x) yb += cert.multipliers[ny + i * nx + x] * src[x];
  }
  if (sgn(yb) <= 0) return false;
  for (std::size_t y = 0; y < ny; ++y) {
    for (std::size_t x = 0; x < nx; ++x) {
      Rational col = cert.multipliers[y];
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        col += cert.multipliers[ny + i * nx + x] * pairs[i].target.atom_masses(ys)[y];
      }
      if (sgn(col) > 0) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("L1-identity partition examples") {
  CHECK(l1_identity_partition(fixture::coinpair_model()).class_count() == 3u);
  const auto ps = SigmaAlgebra::power_set(fixture::coin_space());
  const auto p = fixture::coin_pair(q(1, 3));
  const FiniteModel dup(ps, {{"a", p}, {"b", p}});
  CHECK(l1_identity_partition(dup).classes == std::vector<std::vector<std::size_t>>{{0, 1}});
  const FiniteModel coarse(SigmaAlgebra::trivial(fixture::bit_space()),
                           {{"a", RationalMeasure::dirac(fixture::bit_space(), 0)},
                            {"b", RationalMeasure::dirac(fixture::bit_space(), 1)}});
  CHECK(l1_identity_partition(coarse).class_count() == 1u);
}

TEST_CASE("induce_morphism examples") {
  const auto m = fixture::coinpair_model();
  const auto id = induce_morphism(m, MeasurableMap::identity(m.sigma()));
  for (std::size_t i = 0; i < m.size(); ++i) CHECK(id.target().member(i) == m.member(i));

  const auto f = induce_morphism(m, fixture::sum_map());
  CHECK(f.target().member(0).masses() == RationalVector{q(9, 16), q(6, 16), q(1, 16)});
  CHECK(f.target().member(1).masses() == RationalVector{q(1, 4), q(1, 2), q(1, 4)});
  CHECK(f.target().member(2).masses() == RationalVector{q(1, 16), q(6, 16), q(9, 16)});

  const MeasurableMap constant(m.sigma(), SigmaAlgebra::power_set(fixture::bit_space()), {1, 1, 1, 1});
  const auto c = induce_morphism(m, constant);
  CHECK(l1_identity_partition(c.target()).class_count() == 1u);
}

TEST_CASE("morphism_kernel_at examples") {
  const auto m = fixture::coinpair_model();
  const auto id = induce_morphism(m, MeasurableMap::identity(m.sigma()));
  for (std::size_t i = 0; i < 3; ++i) CHECK(morphism_kernel_at(id, i) == std::vector<std::size_t>{i});

  const MeasurableMap constant(m.sigma(), SigmaAlgebra::power_set(fixture::bit_space()), {0, 0, 0, 0});
  CHECK(morphism_kernel_at(induce_morphism(m, constant), 1) == std::vector<std::size_t>{0, 1, 2});

  const FiniteModel bern(SigmaAlgebra::power_set(fixture::bit_space()),
                         {{"b3/4", fixture::bernoulli(q(3, 4))},
                          {"b1/4", fixture::bernoulli(q(1, 4))},
                          {"b1/2", fixture::bernoulli(q(1, 2))}});
  const auto f = match_morphism(m, bern, fixture::first_map());
  CHECK(f.assignment() == std::vector<std::size_t>{1, 2, 0});
  CHECK(morphism_kernel_at(f, 1) == std::vector<std::size_t>{0});
  CHECK_THROWS_AS(morphism_kernel_at(f, 3), IndexOutOfRange);
}

TEST_CASE("morphisms reject mismatched families") {
  const auto m = fixture::coinpair_model();
  const FiniteModel bern(SigmaAlgebra::power_set(fixture::bit_space()),
                         {{"b1/4", fixture::bernoulli(q(1, 4))}, {"b1/2", fixture::bernoulli(q(1, 2))}});
  try {
    match_morphism(m, bern, fixture::first_map());
    FAIL("expected FamilyMismatch");
  } catch (const FamilyMismatch& e) {
    CHECK(e.member() == 2u);
  }
  CHECK_THROWS_AS(StatisticalMorphism(m, bern, fixture::first_map(), {0, 1}), DimensionMismatch);
}

TEST_CASE("find_reverse_kernel on the sum statistic") {
  const auto m = fixture::coinpair_model();
  const auto result = find_reverse_kernel(pairs_of(m, fixture::sum_map()));
  REQUIRE(result.feasible());
  const auto& k = *result.kernel;
  CHECK(k(1, 1) == q(1, 2));
  CHECK(k(1, 2) == q(1, 2));
  CHECK(k(0, 0) == 1);
  CHECK(k(2, 3) == 1);
  CHECK(k == dual_conditional(kernel_from_map(fixture::sum_map()), m.member(1)).kernel());
}

TEST_CASE("find_reverse_kernel examples") {
  const auto ps = SigmaAlgebra::power_set(fixture::coin_space());
  std::vector<ReverseKernelPair> same;
  for (const auto& p : {q(1, 4), q(1, 2), q(3, 4)}) same.push_back({fixture::coin_pair(p), fixture::coin_pair(p)});
  const auto id = find_reverse_kernel(same);
  REQUIRE(id.feasible());
  CHECK(*id.kernel == MarkovKernel::identity(ps));

  std::vector<ReverseKernelPair> bern;
  for (const auto& p : {q(1, 4), q(1, 2), q(3, 4)}) bern.push_back({fixture::coin_pair(p), fixture::bernoulli(p)});
  const auto none = find_reverse_kernel(bern);
  CHECK_FALSE(none.feasible());
  REQUIRE(none.certificate);
  CHECK(farkas_separates(*none.certificate, bern, ps, SigmaAlgebra::power_set(fixture::bit_space())));
  CHECK(none.certificate->constraint_labels.front() == "row-sum[0]");
  CHECK(none.certificate->constraint_labels.back() == "pair[2].source[11]");
}

TEST_CASE("classification of the worked examples") {
  const auto m = fixture::coinpair_model();
  const auto id = classify_morphism(induce_morphism(m, MeasurableMap::identity(m.sigma())));
  CHECK(id.mono);
  CHECK(id.epi);
  CHECK(id.iso_naive);
  CHECK(id.iso_reverse_kernel);
  REQUIRE(id.reverse_kernel);
  CHECK(*id.reverse_kernel == MarkovKernel::identity(m.sigma()));

  const auto sum = classify_morphism(induce_morphism(m, fixture::sum_map()));
  CHECK(sum.mono);
  CHECK(sum.epi);
  CHECK(sum.iso_reverse_kernel);
  REQUIRE(sum.reverse_kernel);
  CHECK(*sum.reverse_kernel == dual_conditional(kernel_from_map(fixture::sum_map()), m.member(0)).kernel());

  const auto first = classify_morphism(induce_morphism(m, fixture::first_map()));
  CHECK(first.mono);
  CHECK(first.epi);
  CHECK(first.iso_naive);
  CHECK_FALSE(first.iso_reverse_kernel);
  CHECK_FALSE(first.reverse_kernel);
  CHECK(first.infeasibility);
  REQUIRE(first.witness);
  CHECK(first.witness->kind == "no-reverse-kernel");

  const MeasurableMap constant(m.sigma(), SigmaAlgebra::power_set(fixture::bit_space()), {1, 1, 1, 1});
  const auto c = classify_morphism(induce_morphism(m, constant));
  CHECK_FALSE(c.mono);
  CHECK(c.epi);
  CHECK_FALSE(c.iso_naive);
  REQUIRE(c.witness);
  CHECK(c.witness->kind == "mono-collision");
}

TEST_CASE("morphism properties on random instances") {
  fixture::Gen gen(0x3a9);
  for (int round = 0; round < 200; ++round) {
    const auto xs = gen.space(gen.between(1, 5), "x");
    const auto ys = gen.space(gen.between(1, 5), "y");
    const auto sx = gen.sigma(xs);
    const auto sy = gen.sigma(ys);
    const auto model = gen.model(sx, gen.between(1, 5));
    const auto map = gen.map(sx, sy);
    const auto f = induce_morphism(model, map);

    // Commuting diagram.
    CHECK(f.kernel() == kernel_from_map(map));
    for (std::size_t i = 0; i < model.size(); ++i) {
      CHECK(l1_identical(sy, apply_kernel(f.kernel(), model.member(i)),
                         f.target().member(f.assignment()[i])));
    }

    // Set-level brute force for mono and epi against a permuted target.
    const auto target = gen.image_model(model, map);
    const auto g = match_morphism(model, target, map);
    const auto cls = classify_morphism(g);
    const auto src_part = l1_identity_partition(model);
    const auto tgt_part = l1_identity_partition(target);
    std::set<std::size_t> hit;
    bool injective = true;
    for (std::size_t i = 0; i < model.size(); ++i) {
      for (std::size_t j = 0; j < model.size(); ++j) {
        const bool same_src = src_part.class_of[i] == src_part.class_of[j];
        const bool same_img = tgt_part.class_of[g.assignment()[i]] == tgt_part.class_of[g.assignment()[j]];
        if (same_img && !same_src) injective = false;
      }
      hit.insert(tgt_part.class_of[g.assignment()[i]]);
    }
    CHECK(cls.mono == injective);
    CHECK(cls.epi == (hit.size() == tgt_part.class_count()));
    CHECK(cls.iso_naive == (cls.mono && cls.epi));

    // Reverse kernel round trips, re-checked here.
    if (cls.iso_reverse_kernel) {
      REQUIRE(cls.reverse_kernel);
      for (std::size_t i = 0; i < model.size(); ++i) {
        const auto back = apply_kernel(*cls.reverse_kernel, target.member(g.assignment()[i]));
        CHECK(l1_identical(sx, back, model.member(i)));
      }
      for (std::size_t t = 0; t < target.size(); ++t) {
        const auto there = apply_kernel(g.kernel(), apply_kernel(*cls.reverse_kernel, target.member(t)));
        CHECK(l1_identical(sy, there, target.member(t)));
      }
    }

    // Either answer from the solver is independently verifiable.
    const auto pairs = pairs_of(model, map);
    const auto r = find_reverse_kernel(pairs, sx, sy);
    if (r.feasible()) {
      for (const auto& pr : pairs) CHECK(l1_identical(sx, apply_kernel(*r.kernel, pr.target), pr.source));
    } else {
      REQUIRE(r.certificate);
      CHECK(farkas_separates(*r.certificate, pairs, sx, sy));
    }
  }
}

TEST_CASE("bimeasurable maps are isomorphisms") {
  fixture::Gen gen(0xb1);
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = gen.between(1, 6);
    const auto xs = gen.space(n, "x");
    const auto ys = gen.space(n, "y");
    const auto sx = gen.sigma(xs);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), gen.engine());
    std::vector<Block> blocks;
    for (const auto& atom : sx.atoms()) {
      Block b;
      for (auto p : atom) b.push_back(perm[p]);
      blocks.push_back(std::move(b));
    }
    const SigmaAlgebra sy(ys, std::move(blocks));
    const MeasurableMap map(sx, sy, perm);
    REQUIRE(map.is_bimeasurable());
    const auto cls = classify_morphism(induce_morphism(gen.model(sx, gen.between(1, 4)), map));
    CHECK(cls.iso_reverse_kernel);
    CHECK(cls.iso_naive);
  }
}
