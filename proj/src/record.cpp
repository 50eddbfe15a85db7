#include "adhoc/record.hpp"

namespace adhoc {

std::string repository_field(std::string_view full_name) {
    std::string out(full_name);
    for (char& c : out) {
        if (c == '/') c = '_';
    }
    return out;
}

std::string folder_field(std::string_view path) {
    std::string out(path);
    for (char& c : out) {
        if (c == '/' || c == '\\' || c == '.') c = '_';
    }
    return out;
}

namespace {

nlohmann::ordered_json position_json(const SourcePosition& p) {
    nlohmann::ordered_json j;
    j["line"] = p.line;
    j["column"] = p.column;
    return j;
}

SourcePosition position_from(const nlohmann::json& j) { return {j.at("line").get<int>(), j.at("column").get<int>()}; }

}  // namespace

nlohmann::ordered_json to_json(const LogRecord& r) {
    nlohmann::ordered_json j;
    j["logInString"] = r.log_in_string;
    j["functionName"] = r.function_name;
    j["functionType"] = r.function_type;
    j["logLoc"] = {{"start", position_json(r.log_loc.start)}, {"end", position_json(r.log_loc.end)}};
    if (r.complexity_of_function) {
        nlohmann::ordered_json c;
        c["name"] = r.complexity_of_function->name;
        c["complexity"] = r.complexity_of_function->complexity;
        c["line"] = r.complexity_of_function->line;
        j["complexityOfFunction"] = c;
    } else {
        j["complexityOfFunction"] = nullptr;
    }
    nlohmann::ordered_json args = nlohmann::ordered_json::array();
    for (const ArgumentInfo& a : r.arguments) {
        nlohmann::ordered_json arg;
        arg["str"] = a.str;
        arg["typeOfArg"] = a.type_of_arg;
        args.push_back(arg);
    }
    j["arguments"] = args;
    j["isAsyncFunction"] = r.is_async_function;
    j["isCallbackFunction"] = r.is_callback_function;
    j["isAnonymousFunction"] = r.is_anonymous_function;
    j["blockStatement"] = r.block_statement;
    j["repositoryName"] = r.repository_name;
    j["commitSha"] = r.commit_sha;
    j["folderPath"] = r.folder_path;
    j["callbackCalleeName"] = r.callback_callee_name ? nlohmann::ordered_json(*r.callback_callee_name) : nullptr;
    j["eventTime"] = r.event_time ? nlohmann::ordered_json(*r.event_time) : nullptr;
    j["authorTime"] = r.author_time ? nlohmann::ordered_json(*r.author_time) : nullptr;
    return j;
}

LogRecord record_from_json(const nlohmann::json& j) {
    auto opt_string = [&](const char* key) -> std::optional<std::string> {
        if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
        return j.at(key).get<std::string>();
    };
    LogRecord r;
    r.log_in_string = j.at("logInString").get<std::string>();
    r.function_name = j.at("functionName").get<std::string>();
    r.function_type = j.value("functionType", std::string(kNoFunctionType));
    r.log_loc.start = position_from(j.at("logLoc").at("start"));
    r.log_loc.end = position_from(j.at("logLoc").at("end"));
    if (j.contains("complexityOfFunction") && !j.at("complexityOfFunction").is_null()) {
        const auto& c = j.at("complexityOfFunction");
        r.complexity_of_function =
            ComplexityInfo{c.at("name").get<std::string>(), c.at("complexity").get<int>(), c.at("line").get<int>()};
    }
    for (const auto& a : j.at("arguments")) {
        r.arguments.push_back({a.at("str").get<std::string>(), a.at("typeOfArg").get<std::string>()});
    }
    r.is_async_function = j.at("isAsyncFunction").get<bool>();
    r.is_callback_function = j.at("isCallbackFunction").get<bool>();
    r.is_anonymous_function = j.at("isAnonymousFunction").get<bool>();
    r.block_statement = j.at("blockStatement").get<std::string>();
    r.repository_name = j.value("repositoryName", std::string());
    r.commit_sha = j.value("commitSha", std::string());
    r.folder_path = j.value("folderPath", std::string());
    r.callback_callee_name = opt_string("callbackCalleeName");
    r.event_time = opt_string("eventTime");
    r.author_time = opt_string("authorTime");
    return r;
}

}  // namespace adhoc
