#pragma once

#include "core/error.hpp"

#include <json.hpp>

#include <string>

namespace decoy {

using json = nlohmann::json;

// Parses a JSON file, translating syntax errors into parse errors that name
// the file and 1-based line of the first offending byte.
json load_json(const std::string& path);

// Writes with a trailing newline. Object keys serialize sorted, which is what
// makes the on-disk formats byte-reproducible.
void save_json(const std::string& path, const json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Field accessor that reports the JSON pointer-ish path on failure instead of
// nlohmann's bare type message.
template <typename T>
T field_as(const json& j, const std::string& key, const std::string& ctx) {
    if(!j.is_object() || !j.contains(key))
        raise(Errc::parse, ctx + ": missing field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch(const json::exception&) {
        raise(Errc::parse, ctx + ": field '" + key + "' has the wrong type");
    }
}

} // namespace decoy
