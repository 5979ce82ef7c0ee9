#pragma once

// Seeded property suites that cross-check the library against reference computations.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace cantor {

struct SuiteResult {
  std::string name;
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;  // the first few

  bool ok() const { return failed == 0 && passed > 0; }
  nlohmann::json to_json() const;
};

struct SuiteInfo {
  std::string name;
  std::size_t default_cases;
  std::string summary;
};

const std::vector<SuiteInfo>& suites();
bool has_suite(const std::string& name);

/// cases == 0 selects the default. Throws DomainError for an unknown suite.
SuiteResult run_suite(const std::string& name, std::uint64_t seed, std::size_t cases = 0);

}  // namespace cantor
