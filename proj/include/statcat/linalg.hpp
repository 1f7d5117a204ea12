#pragma once

#include <cstddef>
#include <vector>

#include "statcat/rational.hpp"

namespace statcat {

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m, std::size_t columns);

std::size_t rank(RationalMatrix m, std::size_t columns);

/// Basis of {v : m·v = 0}, one vector per free column in increasing order.
/// The vector for free column f has a 1 at f and zero at the other free
/// columns.
std::vector<RationalVector> null_space(RationalMatrix m, std::size_t columns);

/// Scales v to a primitive integer vector whose first nonzero entry is
/// positive. The zero vector is returned unchanged.
RationalVector primitive_integer(RationalVector v);

}  // namespace statcat
