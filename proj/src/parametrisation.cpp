#include "statcat/parametrisation.hpp"

#include <set>

#include "statcat/error.hpp"
#include "statcat/linalg.hpp"
#include "statcat/topology.hpp"

namespace statcat {

StructuralCategory parse_category(const std::string& name) {
  if (name == "Set") return StructuralCategory::Set;
  if (name == "FinTop") return StructuralCategory::FinTop;
  throw UnsupportedCategory("unsupported structural category \"" + name + "\"");
}

std::string to_string(StructuralCategory c) {
  return c == StructuralCategory::Set ? "Set" : "FinTop";
}

Parametrisation::Parametrisation(std::vector<RationalVector> parameters,
                                 std::vector<std::size_t> assignment)
    : parameters_(std::move(parameters)), assignment_(std::move(assignment)) {
  if (parameters_.empty()) throw ConstructionError("parameter space is empty");
  if (assignment_.size() != parameters_.size()) {
    throw ConstructionError("assignment must give one family member per parameter");
  }
  const std::size_t d = parameters_.front().size();
  if (d == 0) throw ConstructionError("parameter vectors need dimension at least 1");
  std::set<RationalVector> seen;
  for (const auto& v : parameters_) {
    if (v.size() != d) throw ConstructionError("parameter vectors differ in dimension");
    if (!seen.insert(v).second) throw ConstructionError("parameter vectors must be distinct");
  }
}

ParamReport analyze_parametrisation(const Parametrisation& theta, const FiniteModel& model) {
  const auto partition = l1_identity_partition(model);
  ParamReport r;
  r.cardinality = theta.cardinality();
  r.length = theta.length();
  r.class_count = partition.class_count();

  RationalMatrix diffs;
  const auto& base = theta.parameters().front();
  for (std::size_t i = 1; i < theta.cardinality(); ++i) {
    RationalVector row(r.length);
    for (std::size_t k = 0; k < r.length; ++k) row[k] = theta.parameters()[i][k] - base[k];
    diffs.push_back(std::move(row));
  }
  r.affine_rank = rank(diffs, r.length);

  std::vector<std::optional<std::size_t>> owner(partition.class_count());
  for (std::size_t i = 0; i < theta.cardinality(); ++i) {
    const auto member = theta.assignment()[i];
    if (member >= model.size()) throw IndexOutOfRange("parameter assigned to a missing member");
    auto& o = owner[partition.class_of[member]];
    if (o && !r.collision) r.collision = std::make_pair(*o, i);
    if (!o) o = i;
  }
  for (std::size_t c = 0; c < owner.size(); ++c) {
    if (!owner[c]) {
      r.uncovered_class = c;
      break;
    }
  }
  r.injective = !r.collision;
  r.surjective = !r.uncovered_class;
  r.identifiable = r.injective && r.surjective;
  return r;
}

std::pair<std::size_t, Parametrisation> minimal_length(const FiniteModel& model,
                                                       StructuralCategory category) {
  if (category != StructuralCategory::Set) {
    throw UnsupportedCategory("minimal length is only available in the Set category");
  }
  const auto reps = l1_identity_partition(model).representatives();
  std::vector<RationalVector> params;
  for (std::size_t i = 0; i < reps.size(); ++i) params.push_back({Rational(i)});
  return {1, Parametrisation(std::move(params), reps)};
}

CheckReport structural_equivalence(const FiniteModel& a, const FiniteModel& b,
                                   StructuralCategory category, std::size_t bound,
                                   const ExecutionPolicy& policy) {
  CheckReport report;
  report.route = to_string(category);
  if (category == StructuralCategory::Set) {
    const auto ca = l1_identity_partition(a).class_count();
    const auto cb = l1_identity_partition(b).class_count();
    report.checked = 1;
    report.pass = ca == cb;
    if (report.pass) {
      std::vector<std::size_t> bijection(ca);
      for (std::size_t i = 0; i < ca; ++i) bijection[i] = i;
      report.certificate.bijection = std::move(bijection);
    } else {
      report.witness = Witness{.kind = "class-count", .lhs = Rational(ca), .rhs = Rational(cb)};
    }
    return report;
  }
  const auto ta = canonical_topology(a);
  const auto tb = canonical_topology(b);
  auto found = is_kolmogorov_equivalent(ta, tb, bound, policy);
  report.checked = 1;
  report.pass = found.has_value();
  if (report.pass) {
    report.certificate.bijection = std::move(found);
  } else {
    const auto qa = kolmogorov_quotient(ta).quotient;
    const auto qb = kolmogorov_quotient(tb).quotient;
    report.witness = Witness{.kind = "no-homeomorphism",
                             .lhs = Rational(qa.opens().size()),
                             .rhs = Rational(qb.opens().size()),
                             .detail = std::to_string(qa.size()) + " vs " +
                                       std::to_string(qb.size()) + " quotient classes"};
  }
  return report;
}

}  // namespace statcat
