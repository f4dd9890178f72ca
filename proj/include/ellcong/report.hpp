#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "ellcong/errors.hpp"

namespace ellcong {

using Json = nlohmann::ordered_json;

// Canonical result of one CLI invocation. Field order is fixed so equal
// results serialize to identical bytes; wall-clock time deliberately lives
// outside the document.
struct ReportDocument {
    std::string command;
    Json parameters = Json::object();
    Json payload = Json::object();
    double elapsed_seconds = 0.0;  // display only, never serialized

    Json to_json() const {
        Json j = Json::object();
        j["command"] = command;
        j["parameters"] = parameters;
        j["payload"] = payload;
        return j;
    }

    std::string serialize() const { return to_json().dump(2) + "\n"; }

    static ReportDocument from_json(const Json& j) {
        if (!j.is_object() || !j.contains("command") || !j.contains("parameters") ||
            !j.contains("payload") || !j.at("command").is_string())
            throw ParseError("report document needs command, parameters, payload");
        ReportDocument doc;
        doc.command = j.at("command").get<std::string>();
        doc.parameters = j.at("parameters");
        doc.payload = j.at("payload");
        return doc;
    }

    static ReportDocument deserialize(const std::string& text) {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("report document is not valid JSON: ") + e.what());
        }
        return from_json(j);
    }
};

namespace detail {

inline void render_value(const Json& v, const std::string& prefix, std::string& out) {
    if (v.is_object()) {
        for (const auto& [key, val] : v.items()) {
            if (val.is_object() || (val.is_array() && !val.empty() && val.front().is_object())) {
                out += prefix + key + ":\n";
                render_value(val, prefix + "  ", out);
            } else {
                out += prefix + key + ": " + (val.is_string() ? val.get<std::string>() : val.dump()) + "\n";
            }
        }
    } else if (v.is_array()) {
        size_t idx = 0;
        for (const auto& item : v) {
            out += prefix + "- [" + std::to_string(idx++) + "]\n";
            render_value(item, prefix + "  ", out);
        }
    } else {
        out += prefix + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    }
}

}  // namespace detail

// Line-oriented rendering for terminals; one key: value pair per line,
// nested structures indented.
inline std::string render_human(const ReportDocument& doc) {
    std::string out;
    out += "command: " + doc.command + "\n";
    detail::render_value(doc.parameters, "", out);
    detail::render_value(doc.payload, "", out);
    return out;
}

}  // namespace ellcong
