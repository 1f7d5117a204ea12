#include <doctest.h>

#include <algorithm>

#include "statcat/error.hpp"
#include "statcat/morphism.hpp"
#include "statcat/parametrisation.hpp"
#include "support.hpp"

using namespace statcat;
using fixture::q;

namespace {

// Θ = random distinct integer vectors of one dimension, each sent to a
// random member; every class is hit by construction when `cover` is set.
Parametrisation random_parametrisation(fixture::Gen& gen, const FiniteModel& m, bool cover) {
  const std::size_t d = gen.between(1, 3);
  std::vector<RationalVector> params;
  std::vector<std::size_t> assignment;
  const std::size_t count = gen.between(1, m.size() + 2);
  for (std::size_t i = 0; params.size() < count && i < 100; ++i) {
    RationalVector v(d);
    for (auto& c : v) c = q(static_cast<long>(gen.below(7)) - 3, static_cast<long>(gen.between(1, 2)));
    if (std::find(params.begin(), params.end(), v) != params.end()) continue;
    params.push_back(v);
    assignment.push_back(gen.below(m.size()));
  }
  if (cover) {
    const auto reps = l1_identity_partition(m).representatives();
    for (std::size_t c = 0; c < reps.size(); ++c) {
      RationalVector v(d, q(100 + static_cast<long>(c)));
      params.push_back(v);
      assignment.push_back(reps[c]);
    }
  }
  return Parametrisation(std::move(params), std::move(assignment));
}

}  // namespace

TEST_CASE("parametrisation construction") {
  CHECK_THROWS_AS(Parametrisation({{q(1, 4)}, {q(2, 8)}}, {0, 1}), ConstructionError);
  CHECK_THROWS_AS(Parametrisation({}, {}), ConstructionError);
  CHECK_THROWS_AS(Parametrisation({{q(1)}, {q(1), q(2)}}, {0, 1}), ConstructionError);
  CHECK_THROWS_AS(Parametrisation({{}}, {0}), ConstructionError);
  CHECK_THROWS_AS(Parametrisation({{q(1)}}, {0, 1}), ConstructionError);
  CHECK_THROWS_AS(analyze_parametrisation(Parametrisation({{q(1)}}, {7}), fixture::coinpair_model()),
                  IndexOutOfRange);
}

TEST_CASE("analyze_parametrisation examples") {
  const auto m = fixture::coinpair_model();
  const auto r = analyze_parametrisation(Parametrisation({{q(1, 4)}, {q(1, 2)}, {q(3, 4)}}, {0, 1, 2}), m);
  CHECK(r.identifiable);
  CHECK(r.cardinality == 3u);
  CHECK(r.length == 1u);
  CHECK(r.affine_rank == 1u);
  CHECK(r.class_count == 3u);

  const auto c = analyze_parametrisation(Parametrisation({{q(0)}, {q(1)}}, {1, 1}), m);
  CHECK_FALSE(c.identifiable);
  CHECK_FALSE(c.injective);
  CHECK(c.collision == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK(c.uncovered_class == 0u);

  const FiniteModel dup(m.sigma(), {{"a", m.member(0)}, {"b", m.member(0)}});
  const auto d = analyze_parametrisation(Parametrisation({{q(0)}, {q(1)}}, {0, 1}), dup);
  CHECK_FALSE(d.identifiable);
  CHECK(d.collision == std::pair<std::size_t, std::size_t>{0, 1});

  const auto plane = analyze_parametrisation(
      Parametrisation({{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}}, {0, 1, 2}), m);
  CHECK(plane.length == 2u);
  CHECK(plane.affine_rank == 2u);
  const auto line = analyze_parametrisation(
      Parametrisation({{q(0), q(0)}, {q(1), q(1)}, {q(2), q(2)}}, {0, 1, 2}), m);
  CHECK(line.affine_rank == 1u);
}

TEST_CASE("minimal_length examples") {
  const auto m = fixture::coinpair_model();
  const auto [len, theta] = minimal_length(m, StructuralCategory::Set);
  CHECK(len == 1u);
  CHECK(theta.parameters() == std::vector<RationalVector>{{q(0)}, {q(1)}, {q(2)}});

  const FiniteModel single(m.sigma(), {{"a", m.member(1)}});
  CHECK(minimal_length(single, StructuralCategory::Set).second.parameters() ==
        std::vector<RationalVector>{{q(0)}});

  const FiniteModel four(m.sigma(), {{"a", m.member(0)}, {"b", m.member(2)}, {"c", m.member(0)},
                                     {"d", m.member(2)}});
  const auto [l4, t4] = minimal_length(four, StructuralCategory::Set);
  CHECK(l4 == 1u);
  CHECK(t4.parameters() == std::vector<RationalVector>{{q(0)}, {q(1)}});
  CHECK(t4.assignment() == std::vector<std::size_t>{0, 1});

  CHECK_THROWS_AS(minimal_length(m, StructuralCategory::FinTop), UnsupportedCategory);
  CHECK_THROWS_AS(parse_category("Vect"), UnsupportedCategory);
  CHECK(parse_category("FinTop") == StructuralCategory::FinTop);
  CHECK(to_string(StructuralCategory::Set) == "Set");
}

TEST_CASE("structural equivalence examples") {
  const auto m = fixture::coinpair_model();
  const auto b = induce_morphism(m, fixture::sum_map()).target();
  const auto set = structural_equivalence(m, b, StructuralCategory::Set);
  CHECK(set.pass);
  CHECK(set.route == "Set");
  CHECK(set.certificate.bijection == std::vector<std::size_t>{0, 1, 2});

  const FiniteModel pair(m.sigma(), {{"a", m.member(0)}, {"b", m.member(1)}});
  const auto fail = structural_equivalence(m, pair, StructuralCategory::Set);
  CHECK_FALSE(fail.pass);
  REQUIRE(fail.witness);
  CHECK(fail.witness->kind == "class-count");
  CHECK(fail.witness->lhs == 3);
  CHECK(fail.witness->rhs == 2);

  const auto top = structural_equivalence(m, b, StructuralCategory::FinTop);
  CHECK(top.pass);
  CHECK(top.route == "FinTop");
  CHECK(top.certificate.bijection);
}

TEST_CASE("parametrisation properties on random models") {
  fixture::Gen gen(0x9a2a);
  for (int round = 0; round < 150; ++round) {
    const auto s = gen.space(gen.between(1, 5));
    const auto m = gen.model(gen.sigma(s), gen.between(1, 6), 0.35);
    const auto classes = l1_identity_partition(m).class_count();

    const auto theta = random_parametrisation(gen, m, gen.chance(0.5));
    const auto r = analyze_parametrisation(theta, m);
    CHECK(r.identifiable == (r.injective && r.surjective));
    if (r.identifiable) CHECK(r.cardinality == classes);
    CHECK(r.collision.has_value() == !r.injective);
    CHECK(r.uncovered_class.has_value() == !r.surjective);

    const auto [len, minimal] = minimal_length(m, StructuralCategory::Set);
    CHECK(len == 1u);
    const auto mr = analyze_parametrisation(minimal, m);
    CHECK(mr.identifiable);
    CHECK(mr.cardinality == classes);

    // Set equivalence against a second model, checked by building identifiable
    // parametrisations on both sides and composing them.
    const auto m2 = gen.model(gen.sigma(gen.space(gen.between(1, 5), "t")), gen.between(1, 6), 0.35);
    const auto set = structural_equivalence(m, m2, StructuralCategory::Set);
    const auto [l2, minimal2] = minimal_length(m2, StructuralCategory::Set);
    CHECK(set.pass == (minimal.cardinality() == minimal2.cardinality()));
    if (set.pass) {
      // θ_N ∘ θ_M⁻¹ on classes, and back.
      const auto pa = l1_identity_partition(m);
      const auto pb = l1_identity_partition(m2);
      for (std::size_t i = 0; i < minimal.cardinality(); ++i) {
        const auto class_a = pa.class_of[minimal.assignment()[i]];
        const auto class_b = pb.class_of[minimal2.assignment()[i]];
        CHECK(class_a == i);
        CHECK(class_b == i);
        CHECK((*set.certificate.bijection)[class_a] == class_b);
      }
    }
    const auto top = structural_equivalence(m, m2, StructuralCategory::FinTop);
    if (top.pass) CHECK(set.pass);
  }
}
