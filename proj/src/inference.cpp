#include "statcat/inference.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <numeric>

#include "statcat/bayes.hpp"
#include "statcat/error.hpp"
#include "statcat/linalg.hpp"
#include "statcat/morphism.hpp"
#include "statcat/simplex.hpp"

namespace statcat {

CheckReport is_sufficient(const FiniteModel& model, const MeasurableMap& map,
                          const std::vector<std::size_t>& subfamily) {
  if (!(map.domain() == model.sigma())) {
    throw SpaceMismatch("is_sufficient: map domain is not the model's measurable space");
  }
  const auto k = kernel_from_map(map);
  const auto reference = dual_conditional(k, model.reference_measure());
  const std::size_t nx = k.domain().atom_count();
  const std::size_t ny = k.codomain().atom_count();

  CheckReport report;
  report.route = "sufficiency";
  for (auto i : subfamily) {
    if (i >= model.size()) throw IndexOutOfRange("subfamily index " + std::to_string(i));
    const auto dual = dual_conditional(k, model.member(i));
    for (std::size_t x = 0; x < nx && !report.witness; ++x) {
      for (std::size_t y = 0; y < ny; ++y) {
        if (!dual.is_defined(y) || !reference.is_defined(y)) continue;
        ++report.checked;
        if (dual(x, y) != reference(x, y)) {
          report.witness = Witness{.kind = "sufficiency-pair", .member = i, .x = x, .y = y,
                                   .lhs = dual(x, y), .rhs = reference(x, y)};
          break;
        }
      }
    }
    if (report.witness) break;
  }
  report.pass = !report.witness;
  if (report.pass) {
    report.certificate.forward = k;
    report.certificate.backward = reference.kernel();
  }
  return report;
}

CheckReport is_sufficient(const FiniteModel& model, const MeasurableMap& map) {
  std::vector<std::size_t> all(model.size());
  std::iota(all.begin(), all.end(), 0);
  return is_sufficient(model, map, all);
}

SigmaAlgebra image_sigma_algebra(const MeasurableMap& map, const SigmaAlgebra& source_events) {
  if (!(source_events.space() == map.domain().space())) {
    throw SpaceMismatch("image_sigma_algebra: events are not on the map's domain");
  }
  const auto& codomain = map.codomain();
  const std::size_t nb = codomain.atom_count();
  // signature[b][g]: codomain atom b meets the image of generator g.
  std::vector<std::vector<bool>> signature(nb, std::vector<bool>(source_events.atom_count()));
  for (std::size_t g = 0; g < source_events.atom_count(); ++g) {
    for (auto x : source_events.atoms()[g]) signature[codomain.atom_of(map(x))][g] = true;
  }
  std::map<std::vector<bool>, Block> groups;
  for (std::size_t b = 0; b < nb; ++b) {
    auto& block = groups[signature[b]];
    for (auto p : codomain.atoms()[b]) block.push_back(p);
  }
  std::vector<Block> partition;
  for (auto& [sig, block] : groups) partition.push_back(std::move(block));
  return SigmaAlgebra(codomain.space(), std::move(partition));
}

CheckReport is_complete(const FiniteModel& target, const MeasurableMap& map,
                        const SigmaAlgebra& source_events) {
  if (!(map.codomain() == target.sigma())) {
    throw SpaceMismatch("is_complete: map codomain is not the target's measurable space");
  }
  const auto image = image_sigma_algebra(map, source_events);
  const auto& sigma = target.sigma();
  const auto& nu = target.reference_measure();
  const auto nu_atoms = nu.atom_masses(sigma);

  std::vector<std::size_t> positive;
  for (std::size_t b = 0; b < nu_atoms.size(); ++b) {
    if (sgn(nu_atoms[b]) > 0) positive.push_back(b);
  }
  // One row per image block: ρ ↦ ∫_block ρ dν. The conditional expectation
  // vanishes iff every row does.
  RationalMatrix op;
  for (const auto& block : image.atoms()) {
    RationalVector row(positive.size(), Rational(0));
    bool any = false;
    for (std::size_t c = 0; c < positive.size(); ++c) {
      const auto first = sigma.atoms()[positive[c]].front();
      if (image.atom_of(first) == image.atom_of(block.front())) {
        row[c] = nu_atoms[positive[c]];
        any = true;
      }
    }
    if (any) op.push_back(std::move(row));
  }

  CheckReport report;
  report.route = "completeness";
  report.checked = positive.size();
  const auto basis = null_space(op, positive.size());
  if (!basis.empty()) {
    const auto v = primitive_integer(basis.front());
    RationalVector values(sigma.space().size(), Rational(0));
    for (std::size_t c = 0; c < positive.size(); ++c) {
      for (auto p : sigma.atoms()[positive[c]]) values[p] = v[c];
    }
    const DensityVector rho(values, nu);
    const auto projected = conditional_expectation(rho, image, nu);
    for (const auto& e : projected.values()) {
      if (sgn(e) != 0) throw Error("completeness null vector failed exact re-check");
    }
    report.witness = Witness{.kind = "completeness-null-vector", .values = std::move(values),
                             .detail = std::to_string(basis.size()) + "-dimensional null space"};
  }
  report.pass = !report.witness;
  return report;
}

CheckReport is_complete(const FiniteModel& target, const MeasurableMap& map) {
  return is_complete(target, map, map.domain());
}

std::optional<Witness> family_mismatch(const FiniteModel& a, const FiniteModel& b,
                                       const MeasurableMap& map) {
  const auto& sigma = b.sigma();
  std::vector<RationalVector> images;
  for (std::size_t i = 0; i < a.size(); ++i) {
    images.push_back(pushforward(map, a.member(i)).atom_masses(sigma));
  }
  std::vector<RationalVector> targets;
  for (std::size_t q = 0; q < b.size(); ++q) targets.push_back(b.member(q).atom_masses(sigma));
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (std::find(targets.begin(), targets.end(), images[i]) == targets.end()) {
      return Witness{.kind = "family-mismatch", .member = i,
                     .detail = "pushforward of \"" + a.name(i) + "\" has no target partner"};
    }
  }
  for (std::size_t q = 0; q < targets.size(); ++q) {
    if (std::find(images.begin(), images.end(), targets[q]) == images.end()) {
      return Witness{.kind = "family-mismatch", .other_member = q,
                     .detail = "target \"" + b.name(q) + "\" is no source pushforward"};
    }
  }
  return std::nullopt;
}

namespace {

CheckReport route_iso(const FiniteModel& a, const FiniteModel& b, const MeasurableMap& map) {
  CheckReport report;
  report.route = "iso";
  const auto f = match_morphism(a, b, map);
  auto cls = classify_morphism(f);
  report.pass = cls.iso_reverse_kernel;
  report.checked = a.size() + b.size();
  if (report.pass) {
    report.certificate.forward = f.kernel();
    report.certificate.backward = std::move(cls.reverse_kernel);
  } else {
    report.witness = std::move(cls.witness);
    report.certificate.infeasibility = std::move(cls.infeasibility);
  }
  return report;
}

// Backward table R(y, x) with Q_P(y)·R(y, x) = k(x, y)·P(x) for every source
// representative P and every y charged by Q_P; rows sum to one.
CheckReport route_detailed_balance(const FiniteModel& a, const MeasurableMap& map) {
  const auto k = kernel_from_map(map);
  const auto& xs = k.domain();
  const auto& ys = k.codomain();
  const std::size_t nx = xs.atom_count();
  const std::size_t ny = ys.atom_count();
  const auto rep_index = l1_identity_partition(a).representatives();
  const auto reps = a.measures(rep_index);

  LinearSystem system(nx * ny);
  for (std::size_t y = 0; y < ny; ++y) {
    RationalVector row(nx * ny, Rational(0));
    for (std::size_t x = 0; x < nx; ++x) row[y * nx + x] = 1;
    system.add_equality(std::move(row), 1,
                        "row-sum[" + ys.space().label(ys.atoms()[y].front()) + "]");
  }
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto p = reps[i].atom_masses(xs);
    const auto q = apply_kernel_atoms(k, p);
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t y = 0; y < ny; ++y) {
        if (sgn(q[y]) == 0) continue;
        RationalVector row(nx * ny, Rational(0));
        row[y * nx + x] = q[y];
        system.add_equality(std::move(row), k(x, y) * p[x],
                            "balance[" + a.name(rep_index[i]) + "][x=" +
                                xs.space().label(xs.atoms()[x].front()) + "][y=" +
                                ys.space().label(ys.atoms()[y].front()) + "]");
      }
    }
  }

  const auto& mu = a.reference_measure();
  const auto forward = regular_conditional(k, mu);
  const auto solved = solve_feasibility(system);
  if (solved.feasible) {
    if (!satisfies(system, solved.point)) throw Error("balance solution failed exact re-check");
    RationalMatrix rows(ny, RationalVector(nx));
    for (std::size_t y = 0; y < ny; ++y) {
      for (std::size_t x = 0; x < nx; ++x) rows[y][x] = solved.point[y * nx + x];
    }
    const ConditionalTable backward(MarkovKernel(ys, xs, std::move(rows)), pushforward(map, mu));
    auto report = detailed_balance_check(forward, backward, reps);
    if (!report.pass) throw Error("solved backward table violates detailed balance");
    report.certificate.forward = k;
    report.certificate.backward = backward.kernel();
    return report;
  }
  if (!certifies_infeasibility(system, solved.farkas)) {
    throw Error("balance infeasibility certificate failed exact re-check");
  }
  auto report = detailed_balance_check(forward, dual_conditional(k, mu), reps);
  if (report.pass) throw Error("reference dual balances an infeasible system");
  report.witness->member = rep_index[*report.witness->member];
  report.certificate.infeasibility = FarkasCertificate{solved.farkas, system.labels};
  return report;
}

CheckReport route_suff_complete(const FiniteModel& a, const FiniteModel& b,
                                const MeasurableMap& map) {
  auto report = is_sufficient(a, map, l1_identity_partition(a).representatives());
  report.route = "suff-complete";
  if (!report.pass) return report;
  const auto complete = is_complete(b, map);
  report.checked += complete.checked;
  if (!complete.pass) {
    report.pass = false;
    report.witness = complete.witness;
    report.certificate = {};
  }
  return report;
}

}  // namespace

EquivalenceVerdict check_equivalence(const FiniteModel& a, const FiniteModel& b,
                                     const MeasurableMap& map, const ExecutionPolicy& policy) {
  if (!(map.domain() == a.sigma()) || !(map.codomain() == b.sigma())) {
    throw SpaceMismatch("check_equivalence: map does not run between the models' spaces");
  }
  EquivalenceVerdict v;
  if (auto w = family_mismatch(a, b, map)) {
    for (auto* r : {&v.route_iso, &v.route_detailed_balance, &v.route_suff_complete}) {
      r->pass = false;
      r->witness = *w;
    }
    v.route_iso.route = "iso";
    v.route_detailed_balance.route = "detailed-balance";
    v.route_suff_complete.route = "suff-complete";
    v.agree = true;
    return v;
  }
  if (policy.threads > 1) {
    auto iso = std::async(std::launch::async, [&] { return route_iso(a, b, map); });
    auto db = std::async(std::launch::async, [&] { return route_detailed_balance(a, map); });
    v.route_suff_complete = route_suff_complete(a, b, map);
    v.route_iso = iso.get();
    v.route_detailed_balance = db.get();
  } else {
    v.route_iso = route_iso(a, b, map);
    v.route_detailed_balance = route_detailed_balance(a, map);
    v.route_suff_complete = route_suff_complete(a, b, map);
  }
  v.agree = v.route_iso.pass == v.route_detailed_balance.pass &&
            v.route_iso.pass == v.route_suff_complete.pass;
  return v;
}

bool OracleResult::any_equivalent() const {
  for (const auto& c : candidates) {
    if (c.verdict.pass()) return true;
  }
  return false;
}

std::size_t OracleResult::disagreements() const {
  std::size_t n = 0;
  for (const auto& c : candidates) n += c.verdict.agree ? 0 : 1;
  return n;
}

OracleResult oracle_equivalence_search(const FiniteModel& a, const FiniteModel& b,
                                       const ExecutionPolicy& policy) {
  constexpr std::size_t kMaxPoints = 4;
  const std::size_t na = a.space().size();
  const std::size_t nb = b.space().size();
  if (na > kMaxPoints || nb > kMaxPoints) {
    throw SearchBoundExceeded("oracle map search supports at most 4 points per space");
  }
  std::size_t total = 1;
  for (std::size_t i = 0; i < na; ++i) total *= nb;

  // Index t encodes the assignment in base nb, most significant digit first,
  // so index order is lexicographic order.
  auto decode = [&](std::size_t t) {
    std::vector<std::size_t> assignment(na);
    for (std::size_t i = na; i-- > 0;) {
      assignment[i] = t % nb;
      t /= nb;
    }
    return assignment;
  };
  struct Outcome {
    bool measurable = false;
    std::optional<OracleEntry> entry;
  };
  auto outcomes = parallel_map(total, ExecutionPolicy{policy.threads}, [&](std::size_t t) {
    Outcome out;
    auto assignment = decode(t);
    std::optional<MeasurableMap> map;
    try {
      map.emplace(a.sigma(), b.sigma(), assignment);
    } catch (const NonMeasurableMap&) {
      return out;
    }
    out.measurable = true;
    if (family_mismatch(a, b, *map)) return out;
    out.entry = OracleEntry{std::move(assignment), check_equivalence(a, b, *map)};
    return out;
  });

  OracleResult result;
  result.maps_enumerated = total;
  for (auto& o : outcomes) {
    result.measurable += o.measurable ? 1 : 0;
    if (o.entry) result.candidates.push_back(std::move(*o.entry));
  }
  return result;
}

}  // namespace statcat
