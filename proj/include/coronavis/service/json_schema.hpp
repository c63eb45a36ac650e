#pragma once

// A small JSON Schema subset: type (string or array of names), properties,
// required, additionalProperties (bool), items, enum, minimum, maximum,
// minItems. Enough to pin down the API payload shapes.

#include <string>
#include <vector>

#include <json.hpp>

namespace coronavis::service {

struct SchemaViolation {
  std::string path;  // JSON pointer into the instance
  std::string message;
};

std::vector<SchemaViolation> validate_schema(const nlohmann::json& schema, const nlohmann::json& instance);

inline bool conforms(const nlohmann::json& schema, const nlohmann::json& instance) {
  return validate_schema(schema, instance).empty();
}

}  // namespace coronavis::service
