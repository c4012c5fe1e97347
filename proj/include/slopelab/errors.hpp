#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slopelab {

/// Base of every error the engine raises on bad input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed algebraic input: unknown generator, wrong codimension, a class
/// that does not have the shape an operation requires.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A family parameter or an h^0 request outside its valid range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Input outside the mathematical domain of an evaluator (e.g. a pair that
/// violates the Noether inequality).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The requested computation is not supported for this family.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Enumeration or sweep size over its cap.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, std::size_t requested, std::size_t cap)
      : Error(what), requested_(requested), cap_(cap) {}
  std::size_t requested() const noexcept { return requested_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t requested_;
  std::size_t cap_;
};

}  // namespace slopelab
