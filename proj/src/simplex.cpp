#include "statcat/simplex.hpp"

#include "statcat/error.hpp"

namespace statcat {

void LinearSystem::add_equality(RationalVector row, Rational value, std::string label) {
  if (row.size() != variables) throw DimensionMismatch("constraint row has wrong length");
  coefficients.push_back(std::move(row));
  rhs.push_back(std::move(value));
  labels.push_back(std::move(label));
}

namespace {

// Dense phase-1 tableau. Columns [0, n) are the original variables,
// [n, n + m) the artificials. Row m is the reduced-cost row.
class Tableau {
 public:
  explicit Tableau(const LinearSystem& sys)
      : n_(sys.variables), m_(sys.constraints()), sign_(m_, 1),
        cells_(m_ + 1, RationalVector(n_ + m_ + 1, Rational(0))), basis_(m_) {
    const std::size_t rhs_col = n_ + m_;
    for (std::size_t i = 0; i < m_; ++i) {
      if (sgn(sys.rhs[i]) < 0) sign_[i] = -1;
      for (std::size_t j = 0; j < n_; ++j) cells_[i][j] = sign_[i] * sys.coefficients[i][j];
      cells_[i][n_ + i] = 1;
      cells_[i][rhs_col] = sign_[i] * sys.rhs[i];
      basis_[i] = n_ + i;
    }
    // Reduced costs for c = (0, 1): d_j = -Σ_i a_ij on original columns.
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) cells_[m_][j] -= cells_[i][j];
      cells_[m_][rhs_col] -= cells_[i][rhs_col];
    }
  }

  /// Runs Bland's rule to optimality; returns the number of pivots.
  std::size_t run() {
    std::size_t pivots = 0;
    const std::size_t rhs_col = n_ + m_;
    for (;;) {
      std::size_t entering = rhs_col;
      for (std::size_t j = 0; j < rhs_col; ++j) {
        if (sgn(cells_[m_][j]) < 0) {
          entering = j;
          break;
        }
      }
      if (entering == rhs_col) return pivots;

      std::size_t leaving = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(cells_[i][entering]) <= 0) continue;
        Rational ratio = cells_[i][rhs_col] / cells_[i][entering];
        if (leaving == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leaving])) {
          leaving = i;
          best = std::move(ratio);
        }
      }
      // Phase 1 is bounded below by zero, so some row always qualifies.
      if (leaving == m_) throw Error("simplex: unbounded phase-1 direction");
      pivot(leaving, entering);
      ++pivots;
    }
  }

  Rational infeasibility() const { return -cells_[m_][n_ + m_]; }

  RationalVector point() const {
    RationalVector x(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = cells_[i][n_ + m_];
    }
    return x;
  }

  /// Phase-1 duals mapped back through the row sign flips.
  RationalVector farkas() const {
    RationalVector y(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      y[i] = sign_[i] * (Rational(1) - cells_[m_][n_ + i]);
    }
    return y;
  }

 private:
  void pivot(std::size_t r, std::size_t e) {
    auto& prow = cells_[r];
    const Rational inv = 1 / prow[e];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < prow.size(); ++j) {
      if (sgn(prow[j]) != 0) {
        prow[j] *= inv;
        nz.push_back(j);
      }
    }
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r || sgn(cells_[i][e]) == 0) continue;
      const Rational f = cells_[i][e];
      for (auto j : nz) cells_[i][j] -= f * prow[j];
    }
    basis_[r] = e;
  }

  std::size_t n_;
  std::size_t m_;
  std::vector<int> sign_;
  RationalMatrix cells_;
  std::vector<std::size_t> basis_;
};

}  // namespace

FeasibilityResult solve_feasibility(const LinearSystem& system) {
  for (const auto& row : system.coefficients) {
    if (row.size() != system.variables) throw DimensionMismatch("constraint row has wrong length");
  }
  Tableau t(system);
  FeasibilityResult result;
  result.pivots = t.run();
  result.feasible = sgn(t.infeasibility()) == 0;
  if (result.feasible) {
    result.point = t.point();
  } else {
    result.farkas = t.farkas();
  }
  return result;
}

bool satisfies(const LinearSystem& system, const RationalVector& x) {
  if (x.size() != system.variables) return false;
  for (const auto& v : x) {
    if (sgn(v) < 0) return false;
  }
  for (std::size_t i = 0; i < system.constraints(); ++i) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < system.variables; ++j) lhs += system.coefficients[i][j] * x[j];
    if (lhs != system.rhs[i]) return false;
  }
  return true;
}

bool certifies_infeasibility(const LinearSystem& system, const RationalVector& y) {
  if (y.size() != system.constraints()) return false;
  for (std::size_t j = 0; j < system.variables; ++j) {
    Rational col = 0;
    for (std::size_t i = 0; i < y.size(); ++i) col += y[i] * system.coefficients[i][j];
    if (sgn(col) > 0) return false;
  }
  Rational value = 0;
  for (std::size_t i = 0; i < y.size(); ++i) value += y[i] * system.rhs[i];
  return sgn(value) > 0;
}

}  // namespace statcat
