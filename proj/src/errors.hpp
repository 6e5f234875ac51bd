#pragma once

#include <stdexcept>
#include <string>

namespace ffda {

/// Bad or missing run configuration (files, keys, value ranges).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure: singular system, lost positive definiteness, no convergence.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem-level failure, always carries the offending path in the message.
class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ffda
