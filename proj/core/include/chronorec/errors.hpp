#pragma once

#include <stdexcept>
#include <string>

namespace chronorec {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shape or dimension mismatch in a tensor operation.
struct DimensionError : Error {
  using Error::Error;
};

/// Malformed input file; message carries the file and line number.
struct ParseError : Error {
  using Error::Error;
};

/// Invalid configuration value or incompatible settings.
struct ConfigError : Error {
  using Error::Error;
};

/// NaN/Inf encountered, loss divergence, or other numeric failure.
struct NumericError : Error {
  using Error::Error;
};

/// Tape backward() called twice without re-recording.
struct StaleTapeError : Error {
  using Error::Error;
};

/// Loss requested over an empty item set.
struct EmptyLossError : Error {
  using Error::Error;
};

/// Period has no usable meta-train users, or similar data defect.
struct DataError : Error {
  using Error::Error;
};

/// Corrupted or incompatible checkpoint file.
struct FormatError : Error {
  using Error::Error;
};

}  // namespace chronorec
