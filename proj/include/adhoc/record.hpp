#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace adhoc {

struct SourcePosition {
    int line = 1;    // 1-based
    int column = 0;  // 0-based
    bool operator==(const SourcePosition&) const = default;
};

struct LogLocation {
    SourcePosition start;
    SourcePosition end;  // exclusive
    bool operator==(const LogLocation&) const = default;
};

struct ComplexityInfo {
    std::string name;
    int complexity = 1;
    int line = 1;
    bool operator==(const ComplexityInfo&) const = default;
};

struct ArgumentInfo {
    std::string str;
    std::string type_of_arg;  // estree node kind
    bool operator==(const ArgumentInfo&) const = default;
};

inline constexpr const char* kTopLevelName = "(top-level)";
inline constexpr const char* kAnonymousName = "(anonymous)";
inline constexpr const char* kNoFunctionType = "none";

struct LogRecord {
    std::string log_in_string;
    std::string function_name = kTopLevelName;
    std::string function_type = kNoFunctionType;
    LogLocation log_loc;
    std::optional<ComplexityInfo> complexity_of_function;
    std::vector<ArgumentInfo> arguments;
    bool is_async_function = false;
    bool is_callback_function = false;
    bool is_anonymous_function = false;
    std::string block_statement;
    std::optional<std::string> callback_callee_name;
    std::string repository_name;
    std::string commit_sha;
    std::string folder_path;
    std::optional<std::string> event_time;   // push time, ISO-8601 UTC
    std::optional<std::string> author_time;  // commit author time, ISO-8601 UTC

    bool operator==(const LogRecord&) const = default;
};

// "owner/name" -> "owner_name"
std::string repository_field(std::string_view full_name);
// "src/components/algorithm/area.js" -> "src_components_algorithm_area_js"
std::string folder_field(std::string_view path);

// camelCase field names in a fixed order.
nlohmann::ordered_json to_json(const LogRecord& r);
LogRecord record_from_json(const nlohmann::json& j);  // throws nlohmann::json::exception

}  // namespace adhoc
