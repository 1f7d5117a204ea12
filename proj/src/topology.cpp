#include "statcat/topology.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "statcat/error.hpp"

namespace statcat {

Estimand Estimand::likelihood(std::size_t n) {
  if (n == 0) throw DimensionMismatch("estimand sample length must be at least 1");
  return Estimand{Kind::likelihood, n, {}};
}

Estimand Estimand::event_probability() { return Estimand{Kind::event_probability, 1, {}}; }

Estimand Estimand::moment(RationalVector weights, std::size_t n) {
  if (n == 0) throw DimensionMismatch("estimand sample length must be at least 1");
  return Estimand{Kind::moment, n, std::move(weights)};
}

Rational evaluate_estimand(const Estimand& e, const RationalMeasure& p,
                           const std::vector<Event>& events, const SigmaAlgebra& sigma) {
  if (!(p.space() == sigma.space())) throw SpaceMismatch("estimand measure not on the σ-algebra");
  if (events.size() != e.sample_length) {
    throw DimensionMismatch("estimand expects " + std::to_string(e.sample_length) + " events");
  }
  if (e.kind == Estimand::Kind::event_probability && e.sample_length != 1) {
    throw DimensionMismatch("event probability takes exactly one event");
  }
  if (e.kind == Estimand::Kind::moment && e.weights.size() != sigma.space().size()) {
    throw DimensionMismatch("moment weights must cover every point");
  }
  for (std::size_t i = 0; i < events.size(); ++i) {
    for (auto x : events[i]) {
      if (x >= sigma.space().size()) throw IndexOutOfRange("event point out of range");
    }
    if (!sigma.is_measurable(events[i])) {
      throw NonMeasurableEvent("event " + std::to_string(i) + " is not a union of atoms");
    }
  }
  Rational value = 1;
  for (const auto& event : events) {
    if (e.kind == Estimand::Kind::moment) {
      Rational m = 0;
      for (auto x : event) m += e.weights[x] * p.mass(x);
      value *= m;
    } else {
      value *= p.measure(event);
    }
  }
  return value;
}

RationalMatrix estimand_pseudometric(const Estimand& e, const FiniteModel& model) {
  const auto& sigma = model.sigma();
  const std::size_t na = sigma.atom_count();
  const std::size_t n = e.sample_length;
  const auto ref = model.reference_measure().atom_masses(sigma);
  const std::size_t m = model.size();

  // values[i][t]: ε of member i on the t-th atom tuple; weight[t]: product
  // of reference masses.
  std::vector<RationalVector> values(m);
  RationalVector weight;
  std::vector<std::size_t> tuple(n, 0);
  for (;;) {
    std::vector<Event> events;
    Rational w = 1;
    for (auto a : tuple) {
      events.push_back(sigma.atoms()[a]);
      w *= ref[a];
    }
    weight.push_back(w);
    for (std::size_t i = 0; i < m; ++i) {
      values[i].push_back(evaluate_estimand(e, model.member(i), events, sigma));
    }
    std::size_t k = n;
    while (k > 0 && ++tuple[k - 1] == na) tuple[--k] = 0;
    if (k == 0) break;
  }

  RationalMatrix d(m, RationalVector(m, Rational(0)));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      Rational s = 0;
      for (std::size_t t = 0; t < weight.size(); ++t) s += abs(values[i][t] - values[j][t]) * weight[t];
      d[i][j] = s;
      d[j][i] = s;
    }
  }
  return d;
}

namespace {

OpenSet full_mask(std::size_t n) { return n == 0 ? 0 : (~OpenSet{0} >> (64 - n)); }

void check_size(std::size_t n) {
  if (n > FiniteTopology::kMaxGround) {
    throw InvalidTopology("ground set larger than " + std::to_string(FiniteTopology::kMaxGround));
  }
}

std::vector<OpenSet> minimal_neighbourhoods(std::size_t n, const std::vector<OpenSet>& opens) {
  std::vector<OpenSet> minimal(n, full_mask(n));
  for (auto o : opens) {
    for (std::size_t x = 0; x < n; ++x) {
      if (o >> x & 1) minimal[x] &= o;
    }
  }
  return minimal;
}

std::vector<OpenSet> unions_of(const std::vector<OpenSet>& generators) {
  std::set<OpenSet> opens{0};
  for (auto g : generators) {
    std::vector<OpenSet> fresh;
    for (auto o : opens) fresh.push_back(o | g);
    opens.insert(fresh.begin(), fresh.end());
  }
  return {opens.begin(), opens.end()};
}

}  // namespace

FiniteTopology::FiniteTopology(std::size_t size, std::vector<OpenSet> opens,
                               std::vector<OpenSet> minimal)
    : size_(size), opens_(std::move(opens)), minimal_(std::move(minimal)) {}

FiniteTopology::FiniteTopology(std::size_t size, std::vector<OpenSet> opens) : size_(size) {
  check_size(size);
  const OpenSet all = full_mask(size);
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  for (auto o : opens) {
    if (o & ~all) throw InvalidTopology("open set mentions a point outside the ground set");
  }
  if (!std::binary_search(opens.begin(), opens.end(), OpenSet{0})) {
    throw InvalidTopology("the empty set must be open");
  }
  if (!std::binary_search(opens.begin(), opens.end(), all)) {
    throw InvalidTopology("the ground set must be open");
  }
  for (std::size_t i = 0; i < opens.size(); ++i) {
    for (std::size_t j = i + 1; j < opens.size(); ++j) {
      if (!std::binary_search(opens.begin(), opens.end(), opens[i] | opens[j])) {
        throw InvalidTopology("opens are not closed under union");
      }
      if (!std::binary_search(opens.begin(), opens.end(), opens[i] & opens[j])) {
        throw InvalidTopology("opens are not closed under intersection");
      }
    }
  }
  opens_ = std::move(opens);
  minimal_ = minimal_neighbourhoods(size_, opens_);
}

FiniteTopology FiniteTopology::from_subbase(std::size_t size, const std::vector<OpenSet>& subbase) {
  check_size(size);
  const OpenSet all = full_mask(size);
  std::vector<OpenSet> minimal(size, all);
  for (auto s : subbase) {
    if (s & ~all) throw InvalidTopology("subbase set mentions a point outside the ground set");
    for (std::size_t x = 0; x < size; ++x) {
      if (s >> x & 1) minimal[x] &= s;
    }
  }
  auto opens = unions_of(minimal);
  if (opens.back() != all) opens.push_back(all);
  return FiniteTopology(size, std::move(opens), std::move(minimal));
}

FiniteTopology FiniteTopology::discrete(std::size_t size) {
  std::vector<OpenSet> singletons;
  for (std::size_t x = 0; x < size; ++x) singletons.push_back(OpenSet{1} << x);
  return from_subbase(size, singletons);
}

FiniteTopology FiniteTopology::indiscrete(std::size_t size) { return from_subbase(size, {}); }

OpenSet FiniteTopology::ground() const noexcept { return full_mask(size_); }

bool FiniteTopology::is_open(OpenSet s) const {
  return std::binary_search(opens_.begin(), opens_.end(), s);
}

bool FiniteTopology::is_t0() const {
  std::set<OpenSet> seen(minimal_.begin(), minimal_.end());
  return seen.size() == minimal_.size();
}

FiniteTopology coarsest_topology(const RationalMatrix& dist) {
  const std::size_t n = dist.size();
  for (const auto& row : dist) {
    if (row.size() != n) throw MalformedMatrix("distance matrix is not square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(dist[i][i]) != 0) throw MalformedMatrix("distance matrix diagonal must be zero");
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(dist[i][j]) < 0) throw MalformedMatrix("distance matrix has a negative entry");
      if (dist[i][j] != dist[j][i]) throw MalformedMatrix("distance matrix is not symmetric");
      for (std::size_t k = 0; k < n; ++k) {
        if (dist[i][k] > dist[i][j] + dist[j][k]) {
          throw MalformedMatrix("distance matrix violates the triangle inequality");
        }
      }
    }
  }
  std::set<Rational> radii;
  for (const auto& row : dist) radii.insert(row.begin(), row.end());
  std::vector<OpenSet> subbase;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& r : radii) {
      OpenSet ball = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (dist[i][j] < r) ball |= OpenSet{1} << j;
      }
      subbase.push_back(ball);
    }
  }
  return FiniteTopology::from_subbase(n, subbase);
}

FiniteTopology canonical_topology(const FiniteModel& model) {
  return coarsest_topology(estimand_pseudometric(Estimand::likelihood(1), model));
}

QuotientMap kolmogorov_quotient(const FiniteTopology& t) {
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> projection(t.size());
  std::map<OpenSet, std::size_t> index;
  for (std::size_t x = 0; x < t.size(); ++x) {
    auto [it, inserted] = index.emplace(t.minimal_neighbourhood(x), classes.size());
    if (inserted) classes.emplace_back();
    classes[it->second].push_back(x);
    projection[x] = it->second;
  }
  std::vector<OpenSet> opens;
  for (auto o : t.opens()) {
    OpenSet image = 0;
    for (std::size_t x = 0; x < t.size(); ++x) {
      if (o >> x & 1) image |= OpenSet{1} << projection[x];
    }
    opens.push_back(image);
  }
  return QuotientMap{std::move(classes), std::move(projection),
                     FiniteTopology(index.size(), std::move(opens))};
}

bool is_homeomorphism(const FiniteTopology& a, const FiniteTopology& b,
                      const std::vector<std::size_t>& bijection) {
  if (a.size() != b.size() || bijection.size() != a.size()) return false;
  OpenSet hit = 0;
  for (auto y : bijection) {
    if (y >= b.size()) return false;
    hit |= OpenSet{1} << y;
  }
  if (hit != b.ground()) return false;
  if (a.opens().size() != b.opens().size()) return false;
  for (auto o : a.opens()) {
    OpenSet image = 0;
    for (std::size_t x = 0; x < a.size(); ++x) {
      if (o >> x & 1) image |= OpenSet{1} << bijection[x];
    }
    if (!b.is_open(image)) return false;
  }
  return true;
}

namespace {

std::vector<std::size_t> open_size_profile(const FiniteTopology& t) {
  std::vector<std::size_t> sizes;
  for (auto o : t.opens()) sizes.push_back(static_cast<std::size_t>(std::popcount(o)));
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

// Specialization-order search: x ∈ U_y must hold iff σ(x) ∈ U_σ(y).
class BijectionSearch {
 public:
  BijectionSearch(const FiniteTopology& a, const FiniteTopology& b) : a_(a), b_(b) {}

  std::optional<std::vector<std::size_t>> run(std::size_t first) {
    const std::size_t n = a_.size();
    sigma_.assign(n, n);
    used_ = 0;
    if (!assign(0, first)) return std::nullopt;
    if (extend(1)) return sigma_;
    return std::nullopt;
  }

 private:
  bool consistent(std::size_t x, std::size_t y) const {
    if (std::popcount(a_.minimal_neighbourhood(x)) != std::popcount(b_.minimal_neighbourhood(y))) {
      return false;
    }
    for (std::size_t z = 0; z < x; ++z) {
      const auto w = sigma_[z];
      const bool za = a_.minimal_neighbourhood(x) >> z & 1;
      const bool zb = b_.minimal_neighbourhood(y) >> w & 1;
      const bool xa = a_.minimal_neighbourhood(z) >> x & 1;
      const bool xb = b_.minimal_neighbourhood(w) >> y & 1;
      if (za != zb || xa != xb) return false;
    }
    return true;
  }

  bool assign(std::size_t x, std::size_t y) {
    if (used_ >> y & 1 || !consistent(x, y)) return false;
    sigma_[x] = y;
    used_ |= OpenSet{1} << y;
    return true;
  }

  bool extend(std::size_t x) {
    const std::size_t n = a_.size();
    if (x == n) return true;
    for (std::size_t y = 0; y < n; ++y) {
      if (!assign(x, y)) continue;
      if (extend(x + 1)) return true;
      used_ &= ~(OpenSet{1} << y);
      sigma_[x] = n;
    }
    return false;
  }

  const FiniteTopology& a_;
  const FiniteTopology& b_;
  std::vector<std::size_t> sigma_;
  OpenSet used_ = 0;
};

}  // namespace

std::optional<std::vector<std::size_t>> is_kolmogorov_equivalent(const FiniteTopology& a,
                                                                 const FiniteTopology& b,
                                                                 std::size_t bound,
                                                                 const ExecutionPolicy& policy) {
  const auto qa = kolmogorov_quotient(a).quotient;
  const auto qb = kolmogorov_quotient(b).quotient;
  const std::size_t n = qa.size();
  if (n != qb.size() || qa.opens().size() != qb.opens().size()) return std::nullopt;
  if (open_size_profile(qa) != open_size_profile(qb)) return std::nullopt;
  std::vector<std::size_t> identity(n);
  for (std::size_t i = 0; i < n; ++i) identity[i] = i;
  if (qa == qb) return identity;
  if (n > bound) {
    throw SearchBoundExceeded("homeomorphism search over " + std::to_string(n) +
                              " classes exceeds the bound of " + std::to_string(bound));
  }
  auto found = parallel_map(n, policy, [&](std::size_t first) {
    return BijectionSearch(qa, qb).run(first);
  });
  for (auto& f : found) {
    if (!f) continue;
    if (!is_homeomorphism(qa, qb, *f)) throw Error("quotient bijection failed exact re-check");
    return f;
  }
  return std::nullopt;
}

}  // namespace statcat
