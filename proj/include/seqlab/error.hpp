#pragma once

#include <stdexcept>
#include <string>

namespace seqlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid space parameters or run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Invalid input data: non-finite entries, zero vectors where a nonzero one
/// is required, mismatched dimensions.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The requested computation has no available evaluation route.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace seqlab
