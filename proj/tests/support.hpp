#pragma once

// Helpers shared by the CLI and acceptance tests.

#include "sumrank/cli.hpp"

#include <json.hpp>

#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

namespace sumrank::testing {

struct CliResult {
    int status = 0;
    std::string out;
    std::string err;
};

inline CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int status = cli::run(args, out, err);
    return {status, out.str(), err.str()};
}

/// RFC 4180 style: quoted fields may contain commas and doubled quotes.
inline std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        any = true;
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            row.push_back(field);
            field.clear();
        } else if (c == '\n') {
            row.push_back(field);
            rows.push_back(row);
            row.clear();
            field.clear();
            any = false;
        } else {
            field += c;
        }
    }
    if (any) {
        row.push_back(field);
        rows.push_back(row);
    }
    return rows;
}

inline nlohmann::json load_schema(const std::string& name) {
    std::ifstream in(std::string(SUMRANK_SCHEMA_DIR) + "/" + name);
    if (!in) throw std::runtime_error("missing schema " + name);
    return nlohmann::json::parse(in);
}

/// Validates the subset of JSON Schema used by the report schemas: type
/// (string or list), required, properties, additionalProperties (bool),
/// items, pattern, minimum, const. Returns the list of violations.
inline void validate_json(const nlohmann::json& value, const nlohmann::json& schema, const std::string& path,
                          std::vector<std::string>& errors) {
    auto type_ok = [&](const std::string& type) {
        if (type == "object") return value.is_object();
        if (type == "array") return value.is_array();
        if (type == "string") return value.is_string();
        if (type == "integer") return value.is_number_integer();
        if (type == "number") return value.is_number();
        if (type == "boolean") return value.is_boolean();
        if (type == "null") return value.is_null();
        return false;
    };
    if (schema.contains("type")) {
        bool ok = false;
        if (schema["type"].is_array()) {
            for (const auto& t : schema["type"]) ok = ok || type_ok(t.get<std::string>());
        } else {
            ok = type_ok(schema["type"].get<std::string>());
        }
        if (!ok) {
            errors.push_back(path + ": type mismatch, got " + value.dump());
            return;
        }
    }
    if (schema.contains("const") && value != schema["const"]) errors.push_back(path + ": const mismatch");
    if (schema.contains("pattern") && value.is_string() &&
        !std::regex_search(value.get<std::string>(), std::regex(schema["pattern"].get<std::string>())))
        errors.push_back(path + ": '" + value.get<std::string>() + "' does not match pattern");
    if (schema.contains("minimum") && value.is_number() && value.get<double>() < schema["minimum"].get<double>())
        errors.push_back(path + ": below minimum");
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema["required"])
                if (!value.contains(key.get<std::string>()))
                    errors.push_back(path + ": missing required '" + key.get<std::string>() + "'");
        const auto props = schema.value("properties", nlohmann::json::object());
        for (const auto& [key, child] : value.items()) {
            if (props.contains(key)) {
                validate_json(child, props[key], path + "." + key, errors);
            } else if (schema.contains("additionalProperties") && schema["additionalProperties"] == false) {
                errors.push_back(path + ": unexpected property '" + key + "'");
            }
        }
    }
    if (value.is_array() && schema.contains("items"))
        for (std::size_t i = 0; i < value.size(); ++i)
            validate_json(value[i], schema["items"], path + "[" + std::to_string(i) + "]", errors);
}

inline std::vector<std::string> schema_errors(const nlohmann::json& value, const std::string& schema_name) {
    std::vector<std::string> errors;
    validate_json(value, load_schema(schema_name), "$", errors);
    return errors;
}

} // namespace sumrank::testing
