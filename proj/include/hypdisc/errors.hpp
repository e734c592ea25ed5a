#pragma once

#include <stdexcept>
#include <string>

namespace hypdisc {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (bad epsilon, non-positive
// height, non-orthogonal matrix, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public DomainError {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual)
      : DomainError("dimension mismatch: expected " + std::to_string(expected) +
                    ", got " + std::to_string(actual)) {}
};

// The map h fixes the point at infinity, so it has no isometric sphere and
// the discreteness criterion does not apply to it.
class FixesInfinity : public Error {
 public:
  FixesInfinity()
      : Error("h fixes infinity: the criterion requires h(inf) != inf") {}
};

// A probe point kept landing on a pole of an intermediate inversion.
class PoleError : public Error {
 public:
  using Error::Error;
};

// The boundary map of the given (A, a) has a finite fixed point.
class NotParabolic : public DomainError {
 public:
  using DomainError::DomainError;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A boundary function evaluation hit its index cap and the partial minimum
// was not enough to decide.
class InexactBoundary : public Error {
 public:
  using Error::Error;
};

// A continued fraction of a floating point input was asked for more terms
// than the input's precision determines.
class PrecisionHorizon : public Error {
 public:
  using Error::Error;
};

}  // namespace hypdisc
