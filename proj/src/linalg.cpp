#include "statcat/linalg.hpp"

#include <utility>

namespace statcat {

std::vector<std::size_t> rref(RationalMatrix& m, std::size_t columns) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < columns && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[row], m[p]);
    const Rational inv = 1 / m[row][c];
    for (auto& v : m[row]) v *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || sgn(m[r][c]) == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t j = c; j < columns; ++j) m[r][j] -= f * m[row][j];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

std::size_t rank(RationalMatrix m, std::size_t columns) { return rref(m, columns).size(); }

std::vector<RationalVector> null_space(RationalMatrix m, std::size_t columns) {
  const auto pivots = rref(m, columns);
  std::vector<bool> is_pivot(columns, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<RationalVector> basis;
  for (std::size_t f = 0; f < columns; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(columns, Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

RationalVector primitive_integer(RationalVector v) {
  mpz_class lcm_den = 1;
  for (const auto& x : v) {
    if (sgn(x) != 0) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), x.get_den_mpz_t());
  }
  mpz_class gcd_num = 0;
  for (const auto& x : v) {
    if (sgn(x) == 0) continue;
    const mpz_class n = x.get_num() * (lcm_den / x.get_den());
    mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), n.get_mpz_t());
  }
  if (gcd_num == 0) return v;
  int sign = 0;
  for (const auto& x : v) {
    if (sgn(x) != 0) {
      sign = sgn(x);
      break;
    }
  }
  const Rational scale = Rational(lcm_den * sign) / Rational(gcd_num);
  for (auto& x : v) x *= scale;
  return v;
}

}  // namespace statcat
