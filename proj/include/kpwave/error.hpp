#pragma once

#include <stdexcept>
#include <string>

namespace kpwave {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Material constants that violate the elastic invariants (mu > 0, rho0 > 0, ...).
class InvalidMaterial : public Error {
 public:
  using Error::Error;
};

/// A zero nonlinearity coefficient or non-positive dispersion: no canonical rescaling exists.
class DegenerateEquation : public Error {
 public:
  using Error::Error;
};

/// Invalid grid or solver configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Invalid sampled input (non-finite values, too few samples, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Malformed or truncated snapshot file.
class FormatError : public Error {
 public:
  using Error::Error;
};

class UnsupportedVersion : public FormatError {
 public:
  using FormatError::FormatError;
};

}  // namespace kpwave
