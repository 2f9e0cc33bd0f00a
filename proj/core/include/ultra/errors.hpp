#pragma once

#include <stdexcept>

namespace ultra {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: unparsable values, non-square matrices, broken tree
/// encodings. Distinct from DomainError so callers can tell bad files from
/// bad mathematics.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input with invalid semantics: axiom violations, empty
/// subsets, out-of-range parameters.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Request exceeds a configured budget (point counts, enumeration caps).
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed. Always a bug, never bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ultra
