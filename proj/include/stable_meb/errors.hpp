#pragma once

#include <stdexcept>
#include <string>

namespace smeb {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (dimension mismatch, empty input,
/// instance too large for an enumeration oracle, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Algorithm parameters outside their admissible ranges.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Dataset or sidecar could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace smeb
