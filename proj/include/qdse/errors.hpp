#pragma once

#include <stdexcept>
#include <string>

namespace qdse {

/// Parameter outside a formula's domain, or an evaluation request the model
/// cannot satisfy (e.g. a design point beyond the normalization range).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent input documents: run configs, catalogs,
/// unknown names, schema violations. Maps to CLI exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem or serialization failure. Maps to CLI exit code 2.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qdse
