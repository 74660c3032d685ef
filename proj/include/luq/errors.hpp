#pragma once

#include <stdexcept>

namespace luq {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Incompatible dimensions, orders, arities or matrix shapes.
struct ShapeError : Error {
  using Error::Error;
};

/// Mode or party index outside the valid range.
struct IndexError : Error {
  using Error::Error;
};

/// A value failed its type invariants (non-Hermitian state, trace off, ...).
struct InvalidState : Error {
  using Error::Error;
};

struct NotUnitaryError : Error {
  using Error::Error;
};

struct NotOrthogonalError : Error {
  using Error::Error;
};

/// Arrow endpoints out of range or representation inconsistent with a quiver.
struct QuiverError : Error {
  using Error::Error;
};

/// Schema-level problems in input files (JSON syntax errors surface as
/// nlohmann exceptions and are mapped to the same exit code by the CLI).
struct ParseError : Error {
  using Error::Error;
};

}  // namespace luq
