#include "statcat/bayes.hpp"

#include "statcat/error.hpp"

namespace statcat {

namespace {

MarkovKernel with_uniform_rows(const MarkovKernel& k, const std::vector<bool>& defined) {
  RationalMatrix rows = k.rows();
  const Rational uniform(1, k.codomain().atom_count());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    if (!defined[a]) rows[a].assign(rows[a].size(), uniform);
  }
  return MarkovKernel(k.domain(), k.codomain(), std::move(rows));
}

std::vector<bool> positive_atoms(const RationalVector& atom_mass) {
  std::vector<bool> out(atom_mass.size());
  for (std::size_t a = 0; a < atom_mass.size(); ++a) out[a] = sgn(atom_mass[a]) > 0;
  return out;
}

}  // namespace

ConditionalTable::ConditionalTable(const MarkovKernel& kernel, RationalMeasure reference)
    : kernel_(kernel), reference_(std::move(reference)) {
  if (!(reference_.space() == kernel.domain().space())) {
    throw SpaceMismatch("conditional table reference is not on the conditioning space");
  }
  defined_ = positive_atoms(reference_.atom_masses(kernel.domain()));
  kernel_ = with_uniform_rows(kernel, defined_);
}

ConditionalTable regular_conditional(const MarkovKernel& k, const RationalMeasure& mu) {
  return ConditionalTable(k, mu);
}

ConditionalTable dual_conditional(const MarkovKernel& k, const RationalMeasure& mu) {
  if (!(mu.space() == k.domain().space())) {
    throw SpaceMismatch("dual_conditional: measure is not on the kernel's domain");
  }
  const auto mu_atoms = mu.atom_masses(k.domain());
  const auto nu_atoms = apply_kernel_atoms(k, mu_atoms);
  const std::size_t nx = k.domain().atom_count();
  const std::size_t ny = k.codomain().atom_count();
  const Rational uniform(1, nx);
  RationalMatrix rows(ny, RationalVector(nx, uniform));
  for (std::size_t y = 0; y < ny; ++y) {
    if (sgn(nu_atoms[y]) == 0) continue;
    for (std::size_t x = 0; x < nx; ++x) rows[y][x] = mu_atoms[x] * k(x, y) / nu_atoms[y];
  }
  MarkovKernel backward(k.codomain(), k.domain(), std::move(rows));
  return ConditionalTable(backward,
                          measure_from_atoms(k.codomain(), nu_atoms, mu.is_probability()));
}

CheckReport bayes_identity_check(const MarkovKernel& k, const RationalMeasure& mu) {
  CheckReport report;
  report.route = "bayes-identity";
  const auto forward = regular_conditional(k, mu);
  const auto backward = dual_conditional(k, mu);
  const auto mu_atoms = mu.atom_masses(k.domain());
  const auto nu_atoms = backward.reference().atom_masses(k.codomain());
  for (std::size_t x = 0; x < mu_atoms.size(); ++x) {
    if (sgn(mu_atoms[x]) == 0) continue;
    for (std::size_t y = 0; y < nu_atoms.size(); ++y) {
      if (sgn(nu_atoms[y]) == 0) continue;
      ++report.checked;
      const Rational lhs = backward(x, y) * nu_atoms[y];
      const Rational rhs = mu_atoms[x] * forward(y, x);
      if (lhs != rhs && !report.witness) {
        report.witness = Witness{.kind = "bayes-pair", .x = x, .y = y, .lhs = lhs, .rhs = rhs};
      }
    }
  }
  report.pass = !report.witness;
  return report;
}

CheckReport detailed_balance_check(const ConditionalTable& forward,
                                   const ConditionalTable& backward,
                                   const std::vector<RationalMeasure>& family) {
  const auto& fk = forward.kernel();
  const auto& bk = backward.kernel();
  if (!(bk.domain() == fk.codomain()) || !(bk.codomain() == fk.domain())) {
    throw DimensionMismatch("backward table must run from the forward codomain to its domain");
  }
  CheckReport report;
  report.route = "detailed-balance";
  for (std::size_t i = 0; i < family.size() && !report.witness; ++i) {
    const auto p = family[i].atom_masses(fk.domain());
    const auto q = apply_kernel_atoms(fk, p);
    for (std::size_t x = 0; x < p.size() && !report.witness; ++x) {
      for (std::size_t y = 0; y < q.size(); ++y) {
        ++report.checked;
        const Rational lhs = backward(x, y) * q[y];
        const Rational rhs = forward(y, x) * p[x];
        if (lhs != rhs) {
          report.witness =
              Witness{.kind = "balance-triple", .member = i, .x = x, .y = y, .lhs = lhs, .rhs = rhs};
          break;
        }
      }
    }
  }
  report.pass = !report.witness;
  return report;
}

}  // namespace statcat
