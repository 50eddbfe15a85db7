#include "adhoc/ingest.hpp"

#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>
#include <sstream>

namespace adhoc::ingest {

using nlohmann::json;

namespace {

void note(StreamDiagnostics* d, std::int64_t line, const std::string& reason) {
    if (d != nullptr && d->messages.size() < StreamDiagnostics::kMaxMessages) {
        d->messages.push_back("line " + std::to_string(line) + ": " + reason);
    }
}

std::optional<std::string> normalize_sha(std::string sha) {
    if (sha.size() != 40) return std::nullopt;
    for (char& c : sha) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (std::isxdigit(static_cast<unsigned char>(c)) == 0) return std::nullopt;
    }
    return sha;
}

std::string string_field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key) || !j.at(key).is_string()) return {};
    return j.at(key).get<std::string>();
}

void handle_line(std::string_view line, std::int64_t line_no, const EventSink& sink, StreamDiagnostics& d) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) return;
    ++d.lines;
    json event;
    try {
        event = json::parse(line);
    } catch (const json::parse_error& e) {
        ++d.malformed_lines;
        note(&d, line_no, std::string("invalid JSON: ") + e.what());
        return;
    }
    try {
        std::optional<PushEvent> push = decode_event(event, &d);
        if (!push) {
            ++d.other_events;
            return;
        }
        ++d.push_events;
        sink(std::move(*push));
    } catch (const std::exception& e) {
        ++d.malformed_lines;
        note(&d, line_no, e.what());
    }
}

}  // namespace

std::string_view source_name(Source s) {
    switch (s) {
        case Source::archive:
            return "archive";
        case Source::query_sample:
            return "query-sample";
        case Source::local:
            return "local";
    }
    return "archive";
}

std::optional<Source> parse_source(std::string_view name) {
    for (Source s : {Source::archive, Source::query_sample, Source::local}) {
        if (source_name(s) == name) return s;
    }
    return std::nullopt;
}

nlohmann::ordered_json to_json(const CandidateCommit& c) {
    nlohmann::ordered_json j;
    j["repo_full_name"] = c.repo_full_name;
    j["sha"] = c.sha;
    j["message"] = c.message;
    j["event_time"] = format_timestamp(c.event_time);
    j["source"] = source_name(c.source);
    return j;
}

CandidateCommit candidate_from_json(const json& j) {
    CandidateCommit c;
    c.repo_full_name = j.at("repo_full_name").get<std::string>();
    c.sha = j.at("sha").get<std::string>();
    c.message = j.value("message", std::string());
    const auto t = parse_timestamp(j.at("event_time").get<std::string>());
    if (!t) throw std::invalid_argument("bad event_time");
    c.event_time = *t;
    const auto s = parse_source(j.value("source", std::string("archive")));
    if (!s) throw std::invalid_argument("unknown source");
    c.source = *s;
    return c;
}

std::optional<PushEvent> decode_event(const json& event, StreamDiagnostics* diagnostics) {
    if (!event.is_object() || !event.contains("type") || !event.at("type").is_string()) {
        throw std::invalid_argument("missing event type");
    }
    if (event.at("type").get<std::string>() != "PushEvent") return std::nullopt;

    PushEvent out;
    out.repo_full_name = event.contains("repo") ? string_field(event.at("repo"), "name") : "";
    if (out.repo_full_name.empty()) out.repo_full_name = string_field(event, "repo_name");
    if (std::count(out.repo_full_name.begin(), out.repo_full_name.end(), '/') != 1) {
        throw std::invalid_argument("repository name '" + out.repo_full_name + "' is not owner/name");
    }
    const auto created = parse_timestamp(string_field(event, "created_at"));
    if (!created) throw std::invalid_argument("missing or invalid created_at");
    out.pushed_at = *created;

    if (!event.contains("payload")) throw std::invalid_argument("missing payload");
    // Warehouse exports carry the payload as an encoded string.
    const json payload =
        event.at("payload").is_string() ? json::parse(event.at("payload").get<std::string>()) : event.at("payload");
    auto add = [&](const std::string& sha, const std::string& message) {
        if (auto s = normalize_sha(sha)) {
            out.commits.push_back({*s, message});
        } else if (diagnostics != nullptr) {
            ++diagnostics->dropped_commits;
        }
    };
    if (payload.contains("commits") && payload.at("commits").is_array()) {
        for (const json& c : payload.at("commits")) add(string_field(c, "sha"), string_field(c, "message"));
    } else if (payload.contains("shas") && payload.at("shas").is_array()) {
        // Early archive schema: [sha, email, message, author, distinct]
        for (const json& c : payload.at("shas")) {
            if (c.is_array() && c.size() >= 3 && c[0].is_string() && c[2].is_string()) {
                add(c[0].get<std::string>(), c[2].get<std::string>());
            }
        }
    }
    return out;
}

void parse_event_stream(std::istream& in, const EventSink& sink, StreamDiagnostics& diagnostics) {
    std::uint64_t offset = 0;
    std::int64_t line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        handle_line(line, line_no, sink, diagnostics);
        offset += line.size() + 1;
    }
    if (in.bad()) throw IngestError("read failure", offset);
}

std::vector<PushEvent> parse_event_stream(std::string_view bytes, StreamDiagnostics* diagnostics) {
    StreamDiagnostics local;
    std::vector<PushEvent> out;
    std::istringstream in{std::string(bytes)};
    parse_event_stream(in, [&](PushEvent&& e) { out.push_back(std::move(e)); }, diagnostics ? *diagnostics : local);
    return out;
}

void read_event_file(const std::filesystem::path& path, const EventSink& sink, StreamDiagnostics& diagnostics) {
    gzFile file = gzopen(path.c_str(), "rb");
    if (file == nullptr) throw IngestError("cannot open " + path.string(), 0);
    std::uint64_t offset = 0;
    std::int64_t line_no = 0;
    std::string pending;
    std::vector<char> buffer(1 << 16);
    for (;;) {
        const int n = gzread(file, buffer.data(), static_cast<unsigned>(buffer.size()));
        if (n < 0) {
            int code = 0;
            const std::string message = gzerror(file, &code);
            gzclose(file);
            throw IngestError("read failure in " + path.string() + ": " + message, offset);
        }
        if (n == 0) {
            int code = Z_OK;
            const std::string message = gzerror(file, &code);
            if (code != Z_OK && code != Z_STREAM_END) {
                gzclose(file);
                throw IngestError("read failure in " + path.string() + ": " + message, offset);
            }
            break;
        }
        offset += static_cast<std::uint64_t>(n);
        pending.append(buffer.data(), static_cast<std::size_t>(n));
        std::size_t start = 0;
        for (std::size_t nl = pending.find('\n'); nl != std::string::npos; nl = pending.find('\n', start)) {
            handle_line(std::string_view(pending).substr(start, nl - start), ++line_no, sink, diagnostics);
            start = nl + 1;
        }
        pending.erase(0, start);
    }
    gzclose(file);
    if (!pending.empty()) handle_line(pending, ++line_no, sink, diagnostics);
}

bool match_removal_message(std::string_view message, const MatchOptions& options) {
    using std::regex;
    static const regex per_line[2] = {regex("(remove|delete).*?console.log", regex::ECMAScript | regex::icase),
                                      regex("(remove|delete).*?console.log", regex::ECMAScript)};
    static const regex spanning[2] = {regex("(remove|delete)[\\s\\S]*?console.log", regex::ECMAScript | regex::icase),
                                      regex("(remove|delete)[\\s\\S]*?console.log", regex::ECMAScript)};
    const int i = options.case_sensitive ? 1 : 0;
    if (options.across_lines) return std::regex_search(message.begin(), message.end(), spanning[i]);
    std::size_t start = 0;
    while (start <= message.size()) {
        std::size_t end = message.find('\n', start);
        if (end == std::string_view::npos) end = message.size();
        const std::string_view line = message.substr(start, end - start);
        if (std::regex_search(line.begin(), line.end(), per_line[i])) return true;
        start = end + 1;
    }
    return false;
}

bool first_commit_only_default(Source source) { return source == Source::query_sample; }

std::vector<CandidateCommit> extract_candidates(const std::vector<PushEvent>& events, Source source,
                                                const CandidateOptions& options) {
    const bool first_only = options.first_commit_only.value_or(first_commit_only_default(source));
    std::vector<CandidateCommit> out;
    for (const PushEvent& e : events) {
        if (options.since && e.pushed_at < *options.since) continue;
        if (options.until && e.pushed_at >= *options.until) continue;
        const std::size_t n = first_only ? std::min<std::size_t>(1, e.commits.size()) : e.commits.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (!match_removal_message(e.commits[i].message, options.match)) continue;
            out.push_back({e.repo_full_name, e.commits[i].sha, e.commits[i].message, e.pushed_at, source});
        }
    }
    return out;
}

std::vector<CandidateCommit> dedupe_candidates(const std::vector<CandidateCommit>& candidates) {
    std::vector<CandidateCommit> out;
    std::map<std::pair<std::string, std::string>, std::size_t> seen;
    for (const CandidateCommit& c : candidates) {
        auto [it, inserted] = seen.try_emplace({c.repo_full_name, c.sha}, out.size());
        if (inserted) {
            out.push_back(c);
        } else if (c.source < out[it->second].source) {
            out[it->second] = c;
        }
    }
    return out;
}

bool compute_is_active(Timestamp last_updated, Timestamp query_date) { return is_active(last_updated, query_date); }

}  // namespace adhoc::ingest
