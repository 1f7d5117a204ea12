#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace statcat {

/// Exact arbitrary-precision rational. Always kept in lowest terms.
using Rational = mpq_class;

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

/// Parses "a/b" or "a" (optional leading '-'), with b > 0.
/// Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

/// Lowest-terms text: "a" when the denominator is 1, else "a/b".
std::string to_string(const Rational& q);

Rational sum(const RationalVector& values);

}  // namespace statcat
