#pragma once

#include "adhoc/context.hpp"
#include "adhoc/diff.hpp"
#include "adhoc/ingest.hpp"
#include "adhoc/record.hpp"
#include "adhoc/remote.hpp"
#include "adhoc/semantics.hpp"
#include "adhoc/stats.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace adhoc::pipeline {

// Rounds to 6 significant digits, the precision of every reported float.
double round6(double v);
std::string format6(double v);

struct ExtractOptions {
    diff::TargetOptions targets;
    context::ContextOptions context;
    int workers = 1;
};

struct SkippedFile {
    std::string path;
    std::string reason;  // minified, library, oversized, non-target-extension, parse-error, missing-content
    std::string detail;
};

struct CommitDiagnostic {
    std::string repo_full_name;
    std::string sha;
    std::string status = "ok";  // ok, unavailable, rate-limited, error
    std::string error;
    std::int64_t files_analyzed = 0;
    std::int64_t matched_logs = 0;
    std::vector<SkippedFile> skipped;
};

struct CommitResult {
    std::vector<LogRecord> records;
    CommitDiagnostic diagnostic;
};

struct ExtractResult {
    std::vector<LogRecord> records;
    std::vector<CommitDiagnostic> commits;
};

// Records in file path order, then source position.
CommitResult process_commit(const ingest::CandidateCommit& candidate, const remote::CommitDetail& detail,
                            const ExtractOptions& options = {});

// Fetches and processes commits on a bounded worker pool; results keep the
// candidate order.
ExtractResult extract(const std::vector<ingest::CandidateCommit>& candidates, remote::RemoteClient& client,
                      const ExtractOptions& options = {});

nlohmann::ordered_json to_json(const CommitDiagnostic& d);

struct AnalyzeOptions {
    semantics::LabelOptions label;
    std::size_t top_n = 10;
    std::optional<std::vector<double>> baseline_complexities;
};

// Mergeable fold over log records that produces the corpus report.
class CorpusAccumulator {
public:
    void add(const LogRecord& record, const semantics::LabelOptions& label = {});
    void merge(const CorpusAccumulator& other);
    nlohmann::ordered_json report(const AnalyzeOptions& options = {}) const;
    // Per-table CSV exports keyed by file name.
    std::vector<std::pair<std::string, std::string>> csv_tables(const AnalyzeOptions& options = {}) const;

private:
    std::int64_t records_ = 0;
    stats::Counter blocks_;
    stats::Counter function_types_;
    stats::IntersectionTable flags_;
    stats::MonthlyAccumulator event_series_{stats::TimeBasis::event_time};
    stats::MonthlyAccumulator author_series_{stats::TimeBasis::author_time};
    stats::Counter function_names_;
    stats::Counter callback_callees_;
    stats::Counter literals_;
    std::map<int, std::int64_t> arg_counts_;
    stats::Counter embedded_callees_;
    std::int64_t unparsed_logs_ = 0;
    std::int64_t with_string_literal_ = 0;
    std::int64_t with_any_literal_ = 0;
    std::int64_t two_arg_ = 0;
    std::int64_t labeled_ = 0;
    std::int64_t with_embedded_call_ = 0;
    // distinct enclosing function key -> complexity
    std::map<std::string, int> complexities_;
};

nlohmann::ordered_json analyze(const std::vector<LogRecord>& records, const AnalyzeOptions& options = {});

struct BaselineResult {
    stats::BaselineCounts counts;
    std::int64_t files_parsed = 0;
    std::vector<std::pair<std::string, std::string>> failures;  // path, error
};

// Parses every target file under `root` (sorted by path).
BaselineResult run_baseline(const std::filesystem::path& root, const diff::TargetOptions& targets = {},
                            bool count_logical_operators = true, int workers = 1);
nlohmann::ordered_json to_json(const BaselineResult& b);

// Popularity summaries, activity share and activity curve for a set of repositories.
nlohmann::ordered_json repo_report(std::vector<RepoMetadata> repos, Timestamp query_date);
// The per-repository rows of a repo_report as CSV.
std::string repo_table_csv(const nlohmann::ordered_json& report);

}  // namespace adhoc::pipeline
