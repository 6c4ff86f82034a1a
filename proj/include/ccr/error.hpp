#pragma once

#include <stdexcept>
#include <string>

namespace ccr {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// Raised when a computation would need coefficients beyond the known precision.
class PrecisionUnderflow : public Error {
 public:
  using Error::Error;
};

/// Linear system for basis matching is inconsistent (too little precision or
/// a wrong weight).
class InconsistentSystem : public Error {
 public:
  using Error::Error;
};

class IntegralityViolation : public Error {
 public:
  using Error::Error;
};

class NotDivisible : public Error {
 public:
  using Error::Error;
};

class NotARoot : public Error {
 public:
  using Error::Error;
};

/// A formula denominator built from a partial derivative vanishes.
class DegenerateDerivative : public Error {
 public:
  using Error::Error;
};

/// sigma, E4, E6 (or f) vanish where a formula divides by them.
class DegeneratePoint : public Error {
 public:
  using Error::Error;
};

/// The B* gcd has degree two; resolving it needs third-order information.
class GcdDegreeTwo : public Error {
 public:
  using Error::Error;
};

class VerificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace ccr
