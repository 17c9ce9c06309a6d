#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace momlab {

/// Base class for every computational failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation exactly at (or numerically on top of) a pole.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Argument beyond a configured ceiling (height, sieve limit, ...).
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Quadrature refinement ran out of node budget before meeting tolerance.
class BudgetExhausted : public Error {
 public:
  BudgetExhausted(const std::string& what, std::complex<double> last, std::complex<double> previous)
      : Error(what), last_value(last), previous_value(previous) {}
  std::complex<double> last_value;
  std::complex<double> previous_value;
};

/// An integral whose convergence cannot be established.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// Evaluator consistency check failed (e.g. spurious imaginary part).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace momlab
