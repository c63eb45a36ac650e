#include "coronavis/service/json_schema.hpp"

#include <algorithm>

namespace coronavis::service {

namespace {

using nlohmann::json;

bool has_type(const json& v, const std::string& type) {
  if (type == "null") return v.is_null();
  if (type == "boolean") return v.is_boolean();
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "number") return v.is_number();
  if (type == "integer") {
    if (v.is_number_integer()) return true;
    return v.is_number_float() && v.get<double>() == static_cast<double>(static_cast<long long>(v.get<double>()));
  }
  throw std::invalid_argument("schema: unknown type " + type);
}

void check(const json& schema, const json& v, const std::string& path, std::vector<SchemaViolation>& out) {
  if (schema.contains("type")) {
    const json& t = schema["type"];
    bool ok = false;
    if (t.is_string()) ok = has_type(v, t.get<std::string>());
    else
      for (const auto& name : t) ok = ok || has_type(v, name.get<std::string>());
    if (!ok) {
      out.push_back({path, "expected type " + t.dump() + ", got " + v.type_name()});
      return;
    }
  }
  if (schema.contains("enum")) {
    const json& choices = schema["enum"];
    if (std::find(choices.begin(), choices.end(), v) == choices.end())
      out.push_back({path, "value " + v.dump() + " not in enum"});
  }
  if (v.is_number()) {
    const double x = v.get<double>();
    if (schema.contains("minimum") && x < schema["minimum"].get<double>())
      out.push_back({path, "below minimum " + schema["minimum"].dump()});
    if (schema.contains("maximum") && x > schema["maximum"].get<double>())
      out.push_back({path, "above maximum " + schema["maximum"].dump()});
  }
  if (v.is_object()) {
    if (schema.contains("required"))
      for (const auto& key : schema["required"])
        if (!v.contains(key.get<std::string>())) out.push_back({path, "missing required " + key.get<std::string>()});
    const json* props = schema.contains("properties") ? &schema["properties"] : nullptr;
    const bool closed = schema.contains("additionalProperties") && schema["additionalProperties"] == false;
    for (const auto& [key, value] : v.items()) {
      const std::string child = path + "/" + key;
      if (props && props->contains(key)) check((*props)[key], value, child, out);
      else if (closed) out.push_back({child, "unexpected property"});
    }
  }
  if (v.is_array()) {
    if (schema.contains("minItems") && v.size() < schema["minItems"].get<std::size_t>())
      out.push_back({path, "fewer than " + schema["minItems"].dump() + " items"});
    if (schema.contains("items"))
      for (std::size_t i = 0; i < v.size(); ++i) check(schema["items"], v[i], path + "/" + std::to_string(i), out);
  }
}

}  // namespace

std::vector<SchemaViolation> validate_schema(const nlohmann::json& schema, const nlohmann::json& instance) {
  std::vector<SchemaViolation> out;
  check(schema, instance, "", out);
  return out;
}

}  // namespace coronavis::service
