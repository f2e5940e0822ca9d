#ifndef UNIFEX_ERRORS_HPP
#define UNIFEX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace unifex {

// Base class for every error raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A caller violated a documented precondition (bad parameter vectors,
// theorem hypotheses not met, unsupported argument combination).
struct PreconditionError : Error {
  using Error::Error;
};

// A computation failed numerically at runtime.
struct NumericalError : Error {
  using Error::Error;
};

// Gamma evaluated at (or too close to) a non-positive integer.
struct PoleError : NumericalError {
  using NumericalError::NumericalError;
};

// A value left the double floating range.
struct OverflowError : NumericalError {
  using NumericalError::NumericalError;
};

// A series did not meet its tolerance within the term budget.
struct ConvergenceError : NumericalError {
  using NumericalError::NumericalError;
};

// A denominator Pochhammer vanished inside a terminating sum.
struct DegenerateError : NumericalError {
  DegenerateError(const std::string& what, int index)
      : NumericalError(what), index(index) {}
  int index;
};

// Rate fitting received errors too small (or zero) to fit.
struct NonFittableError : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace unifex

#endif
