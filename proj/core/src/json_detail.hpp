#pragma once

// nlohmann/json conversions shared by the core translation units. Not installed.

#include <cstdint>
#include <string>

#include <json.hpp>

#include "bagins/errors.hpp"
#include "bagins/pcm.hpp"

namespace bagins::detail {

using ojson = nlohmann::ordered_json;

nlohmann::ordered_json pcm_to_json(const LinguisticPCM& pcm);

/// `where` prefixes error locations, e.g. "line 12: ".
LinguisticPCM pcm_from_json(const nlohmann::json& doc, const std::string& where);

template <class J>
const J& require(const J& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) throw InputError(where + "expected a JSON object");
    const auto it = obj.find(key);
    if (it == obj.end()) throw InputError(where + "missing field '" + key + "'");
    return *it;
}

template <class J>
std::int64_t require_int(const J& obj, const char* key, const std::string& where) {
    const auto& v = require(obj, key, where);
    if (!v.is_number_integer()) throw InputError(where + "field '" + key + "' must be an integer");
    return v.template get<std::int64_t>();
}

template <class J>
double require_number(const J& obj, const char* key, const std::string& where) {
    const auto& v = require(obj, key, where);
    if (!v.is_number()) throw InputError(where + "field '" + key + "' must be a number");
    return v.template get<double>();
}

template <class J>
std::string require_string(const J& obj, const char* key, const std::string& where) {
    const auto& v = require(obj, key, where);
    if (!v.is_string()) throw InputError(where + "field '" + key + "' must be a string");
    return v.template get<std::string>();
}

/// Parses text, converting parse failures into InputError with byte offset.
nlohmann::json parse_json(std::string_view text, const std::string& where);

}  // namespace bagins::detail
