#pragma once

#include <stdexcept>
#include <string>

namespace shaper {

/// Bad configuration file, key, or field value. CLI exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid argument to an operation (outside its mathematical domain). CLI exit code 1.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// The requested operating point cannot satisfy the QoS or energy
/// constraints (macro band exhausted, drain rate below static power, ...).
/// CLI exit code 2.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace shaper
