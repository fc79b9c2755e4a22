#pragma once

#include <stdexcept>
#include <string>

namespace kdda {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Matrix shape or content violates a precondition (non-square, asymmetric,
/// dimension mismatch, non-finite entries).
struct InvalidMatrix : Error {
  using Error::Error;
};

/// Bad data passed to an operation (empty sample set, mismatched dimensions,
/// missing class, labels outside 1..C).
struct InvalidInput : Error {
  using Error::Error;
};

/// Bad configuration value (non-positive cost, M out of range, malformed
/// config file).
struct InvalidConfig : Error {
  using Error::Error;
};

/// Kernel family not accepted by the requested operation (e.g. sigmoid for
/// discriminant extractors).
struct UnsupportedKernel : Error {
  using Error::Error;
};

/// File could not be read, written, or parsed.
struct IoError : Error {
  using Error::Error;
};

}  // namespace kdda
