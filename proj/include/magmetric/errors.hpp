#pragma once

#include <stdexcept>
#include <string>

namespace magmetric {

// Error taxonomy. The CLI maps these onto exit codes: InputError and
// DomainError on user-supplied parameters -> 2, IoError -> 3, everything
// derived from NumericalError -> 4.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent arguments (length mismatch, bad grid, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Parameter outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

/// No sign change on the supplied interval.
class BracketError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Eigensolver failure (no bracket, wrong node count).
class SolverError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A conserved total missed its target by more than the allowed slack.
class AccuracyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SymmetryError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Search left its admissible window (e.g. ground-state m below -200).
class RangeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace magmetric
