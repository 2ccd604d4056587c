#pragma once

#include <stdexcept>
#include <string>

namespace ldts {

// Exception taxonomy shared by every module. The CLI maps usage problems
// (bad flags, bad config values) to exit code 2 and runtime failures
// (I/O, corrupt files, numeric blowups) to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration value (fraction out of range, bad epoch budget, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Invalid call argument (k out of range, negative epoch, empty sample, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Mismatched vector/matrix dimensions.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Non-finite values where finite ones are required.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Inconsistent dataset contents (label out of range, bad edge endpoint, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

// Malformed or truncated files; the message names the offending file.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Filesystem-level failures; the message names the offending file.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ldts
