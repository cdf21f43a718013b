#pragma once

#include <stdexcept>
#include <string>

namespace planet {

/// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operands belong to different scalar backends (e.g. cyclotomic fields of
/// different conductor).
struct BackendMismatchError : Error {
  using Error::Error;
};

/// Geometrically degenerate input (coincident points, zero vectors, ...).
struct DegenerateInputError : Error {
  using Error::Error;
};

/// Arguments outside an operation's domain (bad sizes, bad ranges,
/// unsupported group shapes, malformed tables).
struct DomainError : Error {
  using Error::Error;
};

/// Malformed serialized input (JSON schema violations and the like).
struct InputError : Error {
  using Error::Error;
};

/// A numeric procedure failed to reach its target (rank decision unstable,
/// root refinement diverged, exact root search left the session field).
struct NumericError : Error {
  using Error::Error;
};

}  // namespace planet
