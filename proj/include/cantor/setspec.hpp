#pragma once

// Set specifications: JSON documents that name a set oracle and how to build it.

#include <json.hpp>

#include "cantor/oracle.hpp"
#include "cantor/treekit.hpp"

namespace cantor {

/// A tree object, or the strings "full" and "zeros".
TreePresentation load_tree(const nlohmann::json& j);

/// Builds the oracle described by a set spec. Malformed specs throw SpecError;
/// well-formed specs whose construction fails throw DomainError.
OraclePtr load_set(const nlohmann::json& spec);

/// Reads a JSON document from a file; throws SpecError if it cannot be read or parsed.
nlohmann::json read_json_file(const std::string& path);

}  // namespace cantor
