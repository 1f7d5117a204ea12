/**
 * @file error.hpp
 * @brief Exception hierarchy shared by all statcat modules.
 *
 * Every contract violation raised by the library derives from
 * statcat::Error. Types that carry a location (an atom, a family member,
 * a byte offset) expose it so callers can render precise diagnostics.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace statcat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two objects that must live on the same space (or σ-algebra) do not.
class SpaceMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class InvalidSpace : public Error {
 public:
  using Error::Error;
};

class InvalidSigmaAlgebra : public Error {
 public:
  using Error::Error;
};

class InvalidMeasure : public Error {
 public:
  using Error::Error;
};

class InvalidKernel : public Error {
 public:
  using Error::Error;
};

class AbsoluteContinuityViolated : public Error {
 public:
  AbsoluteContinuityViolated(std::size_t atom, const std::string& what)
      : Error(what), atom_(atom) {}
  std::size_t atom() const noexcept { return atom_; }

 private:
  std::size_t atom_;
};

class NonMeasurableMap : public Error {
 public:
  NonMeasurableMap(std::size_t codomain_atom, const std::string& what)
      : Error(what), codomain_atom_(codomain_atom) {}
  std::size_t codomain_atom() const noexcept { return codomain_atom_; }

 private:
  std::size_t codomain_atom_;
};

class NonMeasurableEvent : public Error {
 public:
  using Error::Error;
};

class NotACoarsening : public Error {
 public:
  using Error::Error;
};

class FamilyMismatch : public Error {
 public:
  FamilyMismatch(std::size_t member, const std::string& what)
      : Error(what), member_(member) {}
  /// Index of the distribution that found no L¹-identical partner.
  std::size_t member() const noexcept { return member_; }

 private:
  std::size_t member_;
};

class MalformedMatrix : public Error {
 public:
  using Error::Error;
};

class InvalidTopology : public Error {
 public:
  using Error::Error;
};

class SearchBoundExceeded : public Error {
 public:
  using Error::Error;
};

class UnsupportedCategory : public Error {
 public:
  using Error::Error;
};

class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. where() names the file, field or position when known.
class ParseError : public Error {
 public:
  ParseError(std::string where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// Well-formed input whose content violates a model invariant.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace statcat
