#pragma once

#include <stdexcept>
#include <string>

namespace cantor {

/// A precondition of a mathematical operation was violated (exit code 1 in the CLI).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed textual or JSON input (exit code 2 in the CLI).
class SpecError : public std::runtime_error {
 public:
  explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cantor
