#pragma once

#include <stdexcept>
#include <string>

namespace cascade {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonHermitianInput : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

class IntegratorFailure : public Error {
 public:
  using Error::Error;
};

class EmptyGrid : public Error {
 public:
  using Error::Error;
};

class InvalidGrid : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class InvalidSector : public Error {
 public:
  using Error::Error;
};

class NonPhysicalState : public Error {
 public:
  using Error::Error;
};

/// A closed-form matrix failed its orthogonality or diagonalization check.
class FormulaInconsistency : public Error {
 public:
  using Error::Error;
};

/// An arccos/arcsin argument (or radicand) left its domain beyond rounding.
class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidTolerance : public Error {
 public:
  using Error::Error;
};

class GridTooShort : public Error {
 public:
  using Error::Error;
};

}  // namespace cascade
