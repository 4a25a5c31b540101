#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mldforge {

enum class ErrorKind {
  DivisionByZero,
  NotARootOfUnity,
  OrderCapExceeded,
  NotAbelian,
  ElementNotInGroup,
  SyntaxError,
  UnknownVariable,
  NotSemiInvariant,
  BadPrime,
  LevelTooSmall,
  BudgetExceeded,
  NotMonomial,
  PseudoReflection,
  BranchLocusTooBig,
  NotCompleteIntersection,
  IdealVanishesOnY,
  PointNotOnY,
  InvalidInput,
  InternalError,
};

std::string_view to_string(ErrorKind kind);

// Whether an error of this kind means "the input was rejected" (CLI exit 2)
// rather than "the computation failed" (exit 1).
bool is_rejection(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& message)
      : Error(ErrorKind::SyntaxError, message + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Raised when f is not semi-invariant. Carries the index of the offending
// group element and the two monomials whose coefficient ratios disagree.
class NotSemiInvariantError : public Error {
 public:
  NotSemiInvariantError(std::size_t element, std::string first_monomial,
                        std::string second_monomial, const std::string& message)
      : Error(ErrorKind::NotSemiInvariant, message),
        element_(element),
        first_(std::move(first_monomial)),
        second_(std::move(second_monomial)) {}

  std::size_t element() const noexcept { return element_; }
  const std::string& first_monomial() const noexcept { return first_; }
  const std::string& second_monomial() const noexcept { return second_; }

 private:
  std::size_t element_;
  std::string first_;
  std::string second_;
};

}  // namespace mldforge
