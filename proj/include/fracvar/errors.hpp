#pragma once

#include <stdexcept>
#include <string>

namespace fracvar {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the documented domain of an operation
/// (Gamma poles, orders outside their interval, unsupported dimensions).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested at a declared singular point of a field.
class SingularPointError : public Error {
 public:
  using Error::Error;
};

/// An integrand singularity with exponent <= -1 was declared.
class NonIntegrableError : public Error {
 public:
  using Error::Error;
};

/// Quadrature stopped because its evaluation budget was exhausted.
class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

/// The operation has no identification for this kind of field.
class UnsupportedFieldError : public Error {
 public:
  using Error::Error;
};

/// A test field used in a variation bound exceeds unit sup-norm.
class TestFieldNormError : public Error {
 public:
  using Error::Error;
};

/// Ball averages defining the precise representative failed to settle.
class NonConvergentAverageError : public Error {
 public:
  using Error::Error;
};

/// Malformed field descriptor or configuration.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace fracvar
