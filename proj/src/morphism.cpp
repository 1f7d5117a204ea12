#include "statcat/morphism.hpp"

#include "statcat/bayes.hpp"
#include "statcat/error.hpp"
#include "statcat/simplex.hpp"

namespace statcat {

namespace {

std::optional<std::size_t> find_l1_partner(const SigmaAlgebra& sigma,
                                           const RationalMeasure& image,
                                           const FiniteModel& target) {
  const auto atoms = image.atom_masses(sigma);
  for (std::size_t q = 0; q < target.size(); ++q) {
    if (target.member(q).atom_masses(sigma) == atoms) return q;
  }
  return std::nullopt;
}

}  // namespace

StatisticalMorphism::StatisticalMorphism(FiniteModel source, FiniteModel target,
                                         MeasurableMap map, std::vector<std::size_t> assignment)
    : source_(std::move(source)),
      target_(std::move(target)),
      map_(std::move(map)),
      kernel_(kernel_from_map(map_)),
      assignment_(std::move(assignment)) {
  if (!(map_.domain() == source_.sigma()) || !(map_.codomain() == target_.sigma())) {
    throw SpaceMismatch("morphism map does not run between the models' measurable spaces");
  }
  if (assignment_.size() != source_.size()) {
    throw DimensionMismatch("morphism assignment must cover every source member");
  }
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    if (assignment_[i] >= target_.size()) throw IndexOutOfRange("assignment target index");
    const auto image = apply_kernel(kernel_, source_.member(i));
    if (!l1_identical(target_.sigma(), image, target_.member(assignment_[i]))) {
      throw FamilyMismatch(i, "image of \"" + source_.name(i) +
                                  "\" is not L1-identical to its assigned target member");
    }
  }
}

StatisticalMorphism induce_morphism(const FiniteModel& source, const MeasurableMap& map) {
  if (!(map.domain() == source.sigma())) {
    throw SpaceMismatch("map domain does not match the source model");
  }
  std::vector<NamedMeasure> family;
  std::vector<std::size_t> assignment;
  for (std::size_t i = 0; i < source.size(); ++i) {
    family.push_back({source.name(i), pushforward(map, source.member(i))});
    assignment.push_back(i);
  }
  std::optional<RationalMeasure> dominating;
  if (source.dominating()) dominating = pushforward(map, *source.dominating());
  FiniteModel target(map.codomain(), std::move(family), std::move(dominating));
  return StatisticalMorphism(source, std::move(target), map, std::move(assignment));
}

StatisticalMorphism match_morphism(const FiniteModel& source, const FiniteModel& target,
                                   const MeasurableMap& map) {
  if (!(map.domain() == source.sigma()) || !(map.codomain() == target.sigma())) {
    throw SpaceMismatch("map does not run between the models' measurable spaces");
  }
  std::vector<std::size_t> assignment;
  for (std::size_t i = 0; i < source.size(); ++i) {
    const auto q = find_l1_partner(target.sigma(), pushforward(map, source.member(i)), target);
    if (!q) {
      throw FamilyMismatch(i, "pushforward of \"" + source.name(i) +
                                  "\" matches no member of the target family");
    }
    assignment.push_back(*q);
  }
  return StatisticalMorphism(source, target, map, std::move(assignment));
}

std::vector<std::size_t> morphism_kernel_at(const StatisticalMorphism& f, std::size_t q_index) {
  if (q_index >= f.target().size()) {
    throw IndexOutOfRange("target index " + std::to_string(q_index) + " out of range");
  }
  const auto& sigma = f.target().sigma();
  const auto q = f.target().member(q_index).atom_masses(sigma);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < f.source().size(); ++i) {
    if (f.target().member(f.assignment()[i]).atom_masses(sigma) == q) out.push_back(i);
  }
  return out;
}

ReverseKernelResult find_reverse_kernel(const std::vector<ReverseKernelPair>& pairs,
                                        const SigmaAlgebra& source_sigma,
                                        const SigmaAlgebra& target_sigma,
                                        const std::optional<MarkovKernel>& candidate) {
  const std::size_t nx = source_sigma.atom_count();
  const std::size_t ny = target_sigma.atom_count();
  std::vector<RationalVector> sources;
  std::vector<RationalVector> targets;
  for (const auto& pair : pairs) {
    if (!(pair.source.space() == source_sigma.space()) ||
        !(pair.target.space() == target_sigma.space())) {
      throw DimensionMismatch("reverse-kernel pairs must share one source and one target space");
    }
    sources.push_back(pair.source.atom_masses(source_sigma));
    targets.push_back(pair.target.atom_masses(target_sigma));
  }

  ReverseKernelResult result;
  if (candidate && candidate->domain() == target_sigma && candidate->codomain() == source_sigma) {
    bool fits = true;
    for (std::size_t i = 0; i < pairs.size() && fits; ++i) {
      fits = apply_kernel_atoms(*candidate, targets[i]) == sources[i];
    }
    if (fits) {
      result.kernel = *candidate;
      return result;
    }
  }

  // Variable K(y, x) has index y * nx + x.
  LinearSystem system(nx * ny);
  const auto& xs = source_sigma.space();
  const auto& ys = target_sigma.space();
  for (std::size_t y = 0; y < ny; ++y) {
    RationalVector row(nx * ny, Rational(0));
    for (std::size_t x = 0; x < nx; ++x) row[y * nx + x] = 1;
    system.add_equality(std::move(row), 1,
                        "row-sum[" + ys.label(target_sigma.atoms()[y].front()) + "]");
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t x = 0; x < nx; ++x) {
      RationalVector row(nx * ny, Rational(0));
      for (std::size_t y = 0; y < ny; ++y) row[y * nx + x] = targets[i][y];
      system.add_equality(std::move(row), sources[i][x],
                          "pair[" + std::to_string(i) + "].source[" +
                              xs.label(source_sigma.atoms()[x].front()) + "]");
    }
  }

  const auto solved = solve_feasibility(system);
  result.pivots = solved.pivots;
  if (solved.feasible) {
    if (!satisfies(system, solved.point)) throw Error("reverse kernel failed exact re-check");
    RationalMatrix rows(ny, RationalVector(nx));
    for (std::size_t y = 0; y < ny; ++y) {
      for (std::size_t x = 0; x < nx; ++x) rows[y][x] = solved.point[y * nx + x];
    }
    MarkovKernel k(target_sigma, source_sigma, std::move(rows));
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (apply_kernel_atoms(k, targets[i]) != sources[i]) {
        throw Error("reverse kernel does not reproduce pair " + std::to_string(i));
      }
    }
    result.kernel = std::move(k);
  } else {
    if (!certifies_infeasibility(system, solved.farkas)) {
      throw Error("infeasibility certificate failed exact re-check");
    }
    result.certificate = FarkasCertificate{solved.farkas, system.labels};
  }
  return result;
}

ReverseKernelResult find_reverse_kernel(const std::vector<ReverseKernelPair>& pairs) {
  if (pairs.empty()) throw DimensionMismatch("find_reverse_kernel needs at least one pair");
  const auto xs = SigmaAlgebra::power_set(pairs.front().source.space());
  const auto ys = SigmaAlgebra::power_set(pairs.front().target.space());
  std::optional<MarkovKernel> candidate;
  if (xs == ys) candidate = MarkovKernel::identity(xs);
  return find_reverse_kernel(pairs, xs, ys, candidate);
}

MorphismClassification classify_morphism(const StatisticalMorphism& f) {
  MorphismClassification out;
  const auto& src = f.source();
  const auto& tgt = f.target();
  const auto src_classes = l1_identity_partition(src);
  const auto tgt_classes = l1_identity_partition(tgt);

  out.mono = true;
  for (std::size_t i = 0; i < src.size() && out.mono; ++i) {
    for (auto j : morphism_kernel_at(f, f.assignment()[i])) {
      if (src_classes.class_of[j] != src_classes.class_of[i]) {
        out.mono = false;
        out.witness = Witness{.kind = "mono-collision", .member = i, .other_member = j,
                              .detail = "distinct source classes share an image class"};
        break;
      }
    }
  }

  std::vector<char> hit(tgt_classes.class_count(), 0);
  for (auto q : f.assignment()) hit[tgt_classes.class_of[q]] = 1;
  out.epi = true;
  for (std::size_t c = 0; c < hit.size(); ++c) {
    if (!hit[c]) {
      out.epi = false;
      if (!out.witness) {
        out.witness = Witness{.kind = "epi-miss", .member = tgt_classes.classes[c].front(),
                              .detail = "target class not reached by any source member"};
      }
      break;
    }
  }
  out.iso_naive = out.mono && out.epi;

  std::vector<ReverseKernelPair> pairs;
  for (auto rep : src_classes.representatives()) {
    pairs.push_back({src.member(rep), tgt.member(f.assignment()[rep])});
  }
  // The Bayes posterior of the reference measure is tried first; it is the
  // common dual whenever the statistic is sufficient.
  auto solved = find_reverse_kernel(pairs, src.sigma(), tgt.sigma(),
                                    dual_conditional(f.kernel(), src.reference_measure()).kernel());
  if (!solved.kernel) {
    out.infeasibility = std::move(solved.certificate);
    if (!out.witness) {
      out.witness = Witness{.kind = "no-reverse-kernel",
                            .detail = "no Markov kernel maps the images back onto the source"};
    }
    return out;
  }

  // Round trips (f*∘f)(P) = P and (f∘f*)(Q) = Q, with f*(Q) required to be
  // L¹-identical to a source member.
  const auto& back = *solved.kernel;
  bool round_trip = true;
  for (std::size_t i = 0; i < src.size() && round_trip; ++i) {
    const auto there = apply_kernel(f.kernel(), src.member(i));
    if (!l1_identical(src.sigma(), apply_kernel(back, there), src.member(i))) {
      round_trip = false;
      if (!out.witness) out.witness = Witness{.kind = "round-trip-source", .member = i};
    }
  }
  for (std::size_t q = 0; q < tgt.size() && round_trip; ++q) {
    const auto pre = apply_kernel(back, tgt.member(q));
    const auto partner = find_l1_partner(src.sigma(), pre, src);
    if (!partner || !l1_identical(tgt.sigma(), apply_kernel(f.kernel(), pre), tgt.member(q))) {
      round_trip = false;
      if (!out.witness) out.witness = Witness{.kind = "round-trip-target", .member = q};
    }
  }
  out.iso_reverse_kernel = round_trip;
  out.reverse_kernel = std::move(solved.kernel);
  return out;
}

}  // namespace statcat
