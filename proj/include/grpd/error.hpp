#pragma once

#include <stdexcept>
#include <string>

namespace grpd {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (scalars, JSON documents, identifiers).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Operand shapes do not conform.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on inputs that violate its precondition
/// (unvalidated object, parent mismatch, non-constant rank, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace grpd
