#pragma once

#include <stdexcept>
#include <string>

namespace taulab {

/// Invalid input: bad schema, parameter outside its domain, malformed config.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A requested enclosure cannot be certified (truncation too short for the
/// argument). The message states a sufficient truncation index.
class EnclosureError : public std::runtime_error {
 public:
  explicit EnclosureError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace taulab
