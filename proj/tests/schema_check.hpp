// Minimal JSON-schema validator for the subset the shipped schema uses:
// type, required, properties, items, enum, and $ref into #/definitions.
// Test-only; returns human-readable mismatch descriptions.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace schema_check {

using nlohmann::json;

inline bool type_matches(const json& value, const std::string& type) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "boolean") return value.is_boolean();
    if (type == "integer") return value.is_number_integer() || value.is_number_unsigned();
    if (type == "number") return value.is_number();
    if (type == "null") return value.is_null();
    return false;
}

inline void validate_node(const json& value, const json& schema, const json& root,
                          const std::string& path, std::vector<std::string>& errors) {
    if (schema.contains("$ref")) {
        const std::string ref = schema.at("$ref");
        const std::string prefix = "#/definitions/";
        if (ref.rfind(prefix, 0) != 0) {
            errors.push_back(path + ": unsupported $ref '" + ref + "'");
            return;
        }
        validate_node(value, root.at("definitions").at(ref.substr(prefix.size())), root, path,
                      errors);
        return;
    }
    if (schema.contains("type") && !type_matches(value, schema.at("type"))) {
        errors.push_back(path + ": expected type " + schema.at("type").get<std::string>() +
                         ", got " + value.type_name());
        return;
    }
    if (schema.contains("enum")) {
        bool found = false;
        for (const auto& allowed : schema.at("enum")) {
            if (value == allowed) {
                found = true;
                break;
            }
        }
        if (!found) errors.push_back(path + ": value " + value.dump() + " not in enum");
    }
    if (schema.contains("required")) {
        for (const auto& key : schema.at("required")) {
            if (!value.contains(key.get<std::string>())) {
                errors.push_back(path + ": missing required key '" + key.get<std::string>() + "'");
            }
        }
    }
    if (schema.contains("properties") && value.is_object()) {
        for (const auto& [key, sub] : schema.at("properties").items()) {
            if (value.contains(key)) {
                validate_node(value.at(key), sub, root, path + "." + key, errors);
            }
        }
    }
    if (schema.contains("items") && value.is_array()) {
        std::size_t index = 0;
        for (const auto& item : value) {
            validate_node(item, schema.at("items"), root, path + "[" + std::to_string(index++) + "]",
                          errors);
        }
    }
}

// Validates `value` against #/definitions/<definition> of `schema_doc`.
inline std::vector<std::string> validate(const json& value, const json& schema_doc,
                                         const std::string& definition) {
    std::vector<std::string> errors;
    validate_node(value, schema_doc.at("definitions").at(definition), schema_doc, "$", errors);
    return errors;
}

}  // namespace schema_check
