#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cleanroom {

inline constexpr std::string_view kVersion = "0.1.0";

/// Base class for all cleanroom errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or usage. CLI exit code 1.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent input data. CLI exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Failure inside a pipeline stage. CLI exit code 3.
class PipelineError : public Error {
 public:
  using Error::Error;
};

}  // namespace cleanroom
