#pragma once

#include "adhoc/repo.hpp"
#include "adhoc/time.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace adhoc::ingest {

struct PushCommit {
    std::string sha;
    std::string message;
    bool operator==(const PushCommit&) const = default;
};

struct PushEvent {
    std::string repo_full_name;
    Timestamp pushed_at{};
    std::vector<PushCommit> commits;
    bool operator==(const PushEvent&) const = default;
};

// Declaration order is the preference order when deduplicating.
enum class Source { archive, query_sample, local };

std::string_view source_name(Source s);
std::optional<Source> parse_source(std::string_view name);

struct CandidateCommit {
    std::string repo_full_name;
    std::string sha;
    std::string message;
    Timestamp event_time{};
    Source source = Source::archive;
    bool operator==(const CandidateCommit&) const = default;
};

nlohmann::ordered_json to_json(const CandidateCommit& c);
CandidateCommit candidate_from_json(const nlohmann::json& j);  // throws nlohmann::json::exception

struct StreamDiagnostics {
    std::int64_t lines = 0;
    std::int64_t push_events = 0;
    std::int64_t other_events = 0;
    std::int64_t malformed_lines = 0;
    std::int64_t dropped_commits = 0;  // sha not 40 hex characters
    std::vector<std::string> messages;  // first kMaxMessages problems, "line N: reason"
    static constexpr std::size_t kMaxMessages = 100;
};

class IngestError : public std::runtime_error {
public:
    IngestError(const std::string& message, std::uint64_t offset)
        : std::runtime_error(message + " at byte " + std::to_string(offset)), offset_(offset) {}
    std::uint64_t offset() const { return offset_; }

private:
    std::uint64_t offset_;
};

// Decodes one event object. Returns nullopt for non-push events; throws
// std::invalid_argument for malformed push events.
std::optional<PushEvent> decode_event(const nlohmann::json& event, StreamDiagnostics* diagnostics = nullptr);

using EventSink = std::function<void(PushEvent&&)>;

void parse_event_stream(std::istream& in, const EventSink& sink, StreamDiagnostics& diagnostics);
std::vector<PushEvent> parse_event_stream(std::string_view bytes, StreamDiagnostics* diagnostics = nullptr);
// Gzip or plain file. Throws IngestError on read failure.
void read_event_file(const std::filesystem::path& path, const EventSink& sink, StreamDiagnostics& diagnostics);

struct MatchOptions {
    bool case_sensitive = false;
    bool across_lines = false;  // default: both words must appear on one line
};

bool match_removal_message(std::string_view message, const MatchOptions& options = {});

struct CandidateOptions {
    MatchOptions match;
    std::optional<bool> first_commit_only;  // default depends on the source
    std::optional<Timestamp> since;         // inclusive
    std::optional<Timestamp> until;         // exclusive
};

bool first_commit_only_default(Source source);

std::vector<CandidateCommit> extract_candidates(const std::vector<PushEvent>& events, Source source,
                                                const CandidateOptions& options = {});

std::vector<CandidateCommit> dedupe_candidates(const std::vector<CandidateCommit>& candidates);

bool compute_is_active(Timestamp last_updated, Timestamp query_date);

}  // namespace adhoc::ingest
