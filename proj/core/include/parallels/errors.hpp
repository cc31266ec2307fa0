#pragma once

#include <stdexcept>
#include <string>

namespace parallels {

// Invalid parameters or unusable inputs (bad flag values, empty input
// directory, malformed seed list). CLI maps this to exit code 1.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem and encoding failures (unreadable file, invalid UTF-8,
// unwritable output). CLI maps this to exit code 2.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace parallels
