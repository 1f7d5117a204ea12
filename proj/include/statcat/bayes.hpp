/**
 * @file bayes.hpp
 * @brief Regular and dual conditional probabilities, the Bayes identity and
 *        the family-wide detailed-balance test.
 *
 * Conditionals are stored in measure form, p(y|x) = τ(δₓ)({y}), so every
 * table is itself a Markov kernel. Rows conditioned on null atoms are not
 * determined; they hold the uniform row and are flagged undefined, and all
 * comparisons quantify over defined rows only.
 */
#pragma once

#include <vector>

#include "statcat/kernel.hpp"
#include "statcat/report.hpp"

namespace statcat {

class ConditionalTable {
 public:
  /// `kernel` rows index the conditioning atoms; `reference` lives on the
  /// kernel's domain. Rows of null reference atoms are replaced by the
  /// uniform row.
  ConditionalTable(const MarkovKernel& kernel, RationalMeasure reference);

  const MarkovKernel& kernel() const noexcept { return kernel_; }
  const RationalMeasure& reference() const noexcept { return reference_; }
  const std::vector<bool>& defined() const noexcept { return defined_; }
  bool is_defined(std::size_t given_atom) const { return defined_.at(given_atom); }

  /// p(outcome | given)
  const Rational& operator()(std::size_t outcome_atom, std::size_t given_atom) const {
    return kernel_(given_atom, outcome_atom);
  }

 private:
  MarkovKernel kernel_;
  RationalMeasure reference_;
  std::vector<bool> defined_;
};

/// p(y|x) = k(x, y), defined where μ(x) > 0.
ConditionalTable regular_conditional(const MarkovKernel& k, const RationalMeasure& mu);

/// p(x|y) = μ(x)·k(x,y)/ν(y) with ν = τ(μ), defined where ν(y) > 0.
ConditionalTable dual_conditional(const MarkovKernel& k, const RationalMeasure& mu);

/// Verifies p(x|y)·ν(y) = μ(x)·p(y|x) on every pair with μ(x) > 0 and
/// ν(y) > 0. Constructive identity: a failure means an internal bug.
CheckReport bayes_identity_check(const MarkovKernel& k, const RationalMeasure& mu);

/// Passes iff backward(x|y)·Q(y) = forward(y|x)·P(x) for every P in `family`
/// (Q = forward applied to P) and every atom pair. The witness is the first
/// violation in (member, x, y) order.
CheckReport detailed_balance_check(const ConditionalTable& forward,
                                   const ConditionalTable& backward,
                                   const std::vector<RationalMeasure>& family);

}  // namespace statcat
