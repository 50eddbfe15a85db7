#include "adhoc/ingest.hpp"
#include "adhoc/pipeline.hpp"
#include "adhoc/remote.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;
using namespace adhoc;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;
constexpr int kExitNoBaseline = 3;

// Missing or unreadable input.
class InputError : public std::runtime_error {
public:
    explicit InputError(const fs::path& path, const std::string& what = "cannot read input")
        : std::runtime_error(what + ": " + path.string()) {}
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool quiet = false;

void info(const std::string& message) {
    if (!quiet) std::cerr << message << '\n';
}

void require_file(const fs::path& p) {
    std::ifstream in(p);
    if (!in || fs::is_directory(p)) throw InputError(p);
}

void require_dir(const fs::path& p) {
    if (!fs::is_directory(p)) throw InputError(p, "not a readable directory");
}

void require_distinct(const fs::path& output, const std::vector<fs::path>& inputs) {
    std::error_code ec;
    for (const fs::path& in : inputs) {
        if (fs::exists(output) && fs::equivalent(output, in, ec)) {
            throw UsageError("output " + output.string() + " would overwrite input " + in.string());
        }
    }
}

// Writes through a temporary file so a failed run never leaves partial output.
void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

template <typename Fn>
std::int64_t for_each_json_line(const fs::path& path, Fn&& fn) {
    require_file(path);
    std::ifstream in(path);
    std::int64_t bad = 0;
    std::int64_t line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            fn(json::parse(line));
        } catch (const std::exception& e) {
            ++bad;
            info(path.string() + ":" + std::to_string(line_no) + ": skipped: " + e.what());
        }
    }
    if (in.bad()) throw InputError(path);
    return bad;
}

std::vector<ingest::CandidateCommit> read_candidates(const fs::path& path) {
    std::vector<ingest::CandidateCommit> out;
    for_each_json_line(path, [&](const json& j) { out.push_back(ingest::candidate_from_json(j)); });
    return out;
}

Timestamp parse_time_option(const std::string& flag, const std::string& text) {
    const auto t = parse_timestamp(text);
    if (!t) throw UsageError(flag + ": invalid timestamp '" + text + "'");
    return *t;
}

template <typename T>
std::string ndjson(const std::vector<T>& items) {
    std::string out;
    for (const T& item : items) out += to_json(item).dump() + '\n';
    return out;
}

void write_csv_tables(const fs::path& dir, const std::vector<std::pair<std::string, std::string>>& tables) {
    for (const auto& [name, content] : tables) write_file(dir / name, content);
}

struct RemoteOptions {
    fs::path fixtures;
    fs::path git_repo;
    std::string repo_name;
    bool github = false;
    fs::path record;
    std::string api_url = "https://api.github.com";
    double rate = 1.0;
    int max_retries = 5;
};

void add_remote_options(CLI::App* cmd, RemoteOptions& o) {
    auto* fixtures = cmd->add_option("--fixtures", o.fixtures, "Recorded response store (owner__name/<sha>.json)");
    auto* git = cmd->add_option("--git-repo", o.git_repo, "Read commits from a local clone");
    auto* github = cmd->add_flag("--github", o.github, "Query the hosting service API");
    fixtures->excludes(git)->excludes(github);
    git->excludes(github);
    cmd->add_option("--repo-name", o.repo_name, "owner/name of the local clone");
    cmd->add_option("--record", o.record, "Store every fetched response under this directory")->needs(github);
    cmd->add_option("--api-url", o.api_url, "API base URL")->capture_default_str();
    cmd->add_option("--rate", o.rate, "Requests per second")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--max-retries", o.max_retries, "Retries per request")->check(CLI::NonNegativeNumber)->capture_default_str();
}

struct ClientHolder {
    std::unique_ptr<remote::RemoteClient> base;
    std::unique_ptr<remote::RemoteClient> recording;
    remote::RemoteClient& get() { return recording ? *recording : *base; }
};

ClientHolder make_client(const RemoteOptions& o, bool extended_extensions) {
    ClientHolder h;
    if (!o.fixtures.empty()) {
        require_dir(o.fixtures);
        h.base = std::make_unique<remote::FixtureClient>(o.fixtures);
    } else if (!o.git_repo.empty()) {
        require_dir(o.git_repo);
        h.base = std::make_unique<remote::LocalGitClient>(o.git_repo, o.repo_name);
    } else if (o.github) {
        remote::GitHubConfig cfg;
        cfg.base_url = o.api_url;
        if (const char* token = std::getenv(remote::kTokenEnvVar)) cfg.token = token;
        cfg.requests_per_second = o.rate;
        cfg.max_retries = o.max_retries;
        cfg.extended_extensions = extended_extensions;
        h.base = std::make_unique<remote::GitHubClient>(cfg);
        if (!o.record.empty()) h.recording = std::make_unique<remote::RecordingClient>(*h.base, o.record);
    } else {
        throw UsageError("one of --fixtures, --git-repo or --github is required");
    }
    return h;
}

// filter-events

struct FilterOptions {
    std::vector<fs::path> archive;
    std::vector<fs::path> query_sample;
    fs::path git_repo;
    std::string repo_name;
    std::string since;
    std::string until;
    std::optional<bool> first_commit_only;
    bool case_sensitive = false;
    bool across_lines = false;
    fs::path output;
    fs::path diagnostics;
};

int run_filter(const FilterOptions& o) {
    if (o.archive.empty() && o.query_sample.empty() && o.git_repo.empty()) {
        throw UsageError("no input: give --archive, --query-sample or --git-repo");
    }
    std::vector<fs::path> inputs = o.archive;
    inputs.insert(inputs.end(), o.query_sample.begin(), o.query_sample.end());
    for (const fs::path& p : inputs) require_file(p);
    require_distinct(o.output, inputs);

    ingest::CandidateOptions copts;
    copts.match.case_sensitive = o.case_sensitive;
    copts.match.across_lines = o.across_lines;
    copts.first_commit_only = o.first_commit_only;
    if (!o.since.empty()) copts.since = parse_time_option("--since", o.since);
    if (!o.until.empty()) copts.until = parse_time_option("--until", o.until);

    std::vector<ingest::CandidateCommit> all;
    ordered_json files = ordered_json::array();
    auto scan = [&](const fs::path& path, ingest::Source source) {
        ingest::StreamDiagnostics d;
        std::int64_t matched = 0;
        try {
            ingest::read_event_file(
                path,
                [&](ingest::PushEvent&& e) {
                    auto c = ingest::extract_candidates({e}, source, copts);
                    matched += static_cast<std::int64_t>(c.size());
                    all.insert(all.end(), c.begin(), c.end());
                },
                d);
        } catch (const ingest::IngestError& e) {
            throw InputError(path, std::string(e.what()) + " at byte " + std::to_string(e.offset()) + " in");
        }
        files.push_back({{"path", path.string()},
                         {"source", ingest::source_name(source)},
                         {"lines", d.lines},
                         {"push_events", d.push_events},
                         {"other_events", d.other_events},
                         {"malformed_lines", d.malformed_lines},
                         {"dropped_commits", d.dropped_commits},
                         {"candidates", matched},
                         {"messages", d.messages}});
        info(path.string() + ": " + std::to_string(d.push_events) + " push events, " + std::to_string(matched) +
             " candidates, " + std::to_string(d.malformed_lines) + " malformed lines");
    };
    for (const fs::path& p : o.archive) scan(p, ingest::Source::archive);
    for (const fs::path& p : o.query_sample) scan(p, ingest::Source::query_sample);

    if (!o.git_repo.empty()) {
        require_dir(o.git_repo);
        const std::string name =
            o.repo_name.empty() ? "local/" + fs::absolute(o.git_repo).lexically_normal().filename().string() : o.repo_name;
        remote::LocalGitClient git(o.git_repo, name);
        std::vector<ingest::PushEvent> events;
        for (const auto& entry : git.log()) {
            const auto t = parse_timestamp(entry.commit_time);
            if (!t) continue;
            events.push_back({name, *t, {{entry.sha, entry.message}}});
        }
        const auto c = ingest::extract_candidates(events, ingest::Source::local, copts);
        all.insert(all.end(), c.begin(), c.end());
        files.push_back({{"path", o.git_repo.string()},
                         {"source", "local"},
                         {"commits", events.size()},
                         {"candidates", c.size()}});
        info(o.git_repo.string() + ": " + std::to_string(events.size()) + " commits, " + std::to_string(c.size()) +
             " candidates");
    }

    const auto unique = ingest::dedupe_candidates(all);
    write_file(o.output, ndjson(unique));
    std::int64_t events = 0;
    for (const auto& f : files) events += f.value("push_events", f.value("commits", std::int64_t{0}));
    std::cout << ordered_json{{"push_events", events},
                              {"candidates", all.size()},
                              {"duplicates_removed", all.size() - unique.size()},
                              {"unique_candidates", unique.size()}}
                     .dump()
              << '\n';
    if (!o.diagnostics.empty()) {
        ordered_json d = {{"inputs", files}, {"candidates", all.size()}, {"unique_candidates", unique.size()}};
        write_file(o.diagnostics, d.dump(2) + '\n');
    }
    info("wrote " + std::to_string(unique.size()) + " candidates to " + o.output.string());
    return 0;
}

// extract

struct ExtractCli {
    fs::path candidates;
    RemoteOptions remote;
    fs::path output;
    fs::path diagnostics;
    int workers = 1;
    bool extended_extensions = false;
    bool no_logical_operators = false;
    std::vector<std::string> console_methods;
};

int run_extract(const ExtractCli& o) {
    require_file(o.candidates);
    require_distinct(o.output, {o.candidates});
    const auto candidates = read_candidates(o.candidates);
    ClientHolder client = make_client(o.remote, o.extended_extensions);

    pipeline::ExtractOptions opts;
    opts.targets.extended_extensions = o.extended_extensions;
    opts.context.count_logical_operators = !o.no_logical_operators;
    opts.context.extra_console_methods = o.console_methods;
    opts.workers = o.workers;
    const auto result = pipeline::extract(candidates, client.get(), opts);

    write_file(o.output, ndjson(result.records));
    std::map<std::string, std::int64_t> by_status;
    for (const auto& c : result.commits) ++by_status[c.status];
    if (!o.diagnostics.empty()) write_file(o.diagnostics, ndjson(result.commits));
    std::string summary = "extracted " + std::to_string(result.records.size()) + " records from " +
                          std::to_string(candidates.size()) + " commits";
    for (const auto& [status, n] : by_status) summary += ", " + status + " " + std::to_string(n);
    info(summary);
    return 0;
}

// analyze

struct AnalyzeCli {
    std::vector<fs::path> records;
    fs::path baseline;
    fs::path output;
    fs::path csv_dir;
    std::size_t top = 10;
    bool word_boundary = false;
};

int run_analyze(const AnalyzeCli& o) {
    for (const fs::path& p : o.records) require_file(p);
    std::vector<fs::path> inputs = o.records;
    pipeline::AnalyzeOptions opts;
    opts.top_n = o.top;
    opts.label.word_boundary = o.word_boundary;
    if (!o.baseline.empty()) {
        require_file(o.baseline);
        inputs.push_back(o.baseline);
        json b;
        try {
            std::ifstream in(o.baseline);
            b = json::parse(in);
            opts.baseline_complexities = b.at("complexities").get<std::vector<double>>();
        } catch (const json::exception& e) {
            throw InputError(o.baseline, std::string("invalid baseline (") + e.what() + ")");
        }
    }
    require_distinct(o.output, inputs);

    pipeline::CorpusAccumulator acc;
    std::int64_t skipped = 0;
    for (const fs::path& p : o.records) {
        skipped += for_each_json_line(p, [&](const json& j) { acc.add(record_from_json(j), opts.label); });
    }
    ordered_json report = acc.report(opts);
    report["skipped_lines"] = skipped;
    write_file(o.output, report.dump(2) + '\n');
    if (!o.csv_dir.empty()) write_csv_tables(o.csv_dir, acc.csv_tables(opts));
    info("analyzed " + report["records"].dump() + " records");
    return 0;
}

// baseline

struct BaselineCli {
    fs::path corpus;
    fs::path output;
    int workers = 1;
    bool extended_extensions = false;
    bool no_logical_operators = false;
};

int run_baseline(const BaselineCli& o) {
    require_dir(o.corpus);
    diff::TargetOptions targets;
    targets.extended_extensions = o.extended_extensions;
    const auto result = pipeline::run_baseline(o.corpus, targets, !o.no_logical_operators, o.workers);
    for (const auto& [path, error] : result.failures) info(path + ": skipped: " + error);
    if (result.files_parsed == 0) {
        std::cerr << "error: no parseable files under " << o.corpus.string() << '\n';
        return kExitNoBaseline;
    }
    write_file(o.output, pipeline::to_json(result).dump(2) + '\n');
    info("parsed " + std::to_string(result.files_parsed) + " files, " + std::to_string(result.counts.total) +
         " functions");
    return 0;
}

// report

struct ReportCli {
    fs::path repos;
    fs::path candidates;
    RemoteOptions remote;
    std::string query_date;
    fs::path output;
    fs::path csv_dir;
    fs::path save_repos;
};

int run_report(const ReportCli& o) {
    if (o.repos.empty() == o.candidates.empty()) throw UsageError("give exactly one of --repos or --candidates");
    const fs::path input = o.repos.empty() ? o.candidates : o.repos;
    require_file(input);
    require_distinct(o.output, {input});

    Timestamp query = std::chrono::floor<std::chrono::days>(std::chrono::system_clock::now());
    if (!o.query_date.empty()) query = parse_time_option("--query-date", o.query_date);

    std::vector<RepoMetadata> repos;
    std::vector<std::string> unavailable;
    if (!o.repos.empty()) {
        for_each_json_line(o.repos, [&](const json& j) { repos.push_back(remote::repo_from_json(j)); });
    } else {
        ClientHolder client = make_client(o.remote, false);
        std::set<std::string> names;
        for (const auto& c : read_candidates(o.candidates)) names.insert(c.repo_full_name);
        for (const std::string& name : names) {
            try {
                repos.push_back(client.get().fetch_repo_metadata(name));
            } catch (const remote::RemoteError& e) {
                unavailable.push_back(name);
                info(name + ": " + e.what());
            }
        }
    }
    for (const RepoMetadata& r : repos) {
        if (r.last_updated > query) {
            throw UsageError(r.full_name + " was updated after the query date " + format_timestamp(query));
        }
    }
    ordered_json report = pipeline::repo_report(repos, query);
    report["unavailable"] = unavailable;
    write_file(o.output, report.dump(2) + '\n');
    if (!o.csv_dir.empty()) write_file(o.csv_dir / "repositories.csv", pipeline::repo_table_csv(report));
    if (!o.save_repos.empty()) {
        std::string lines;
        for (const RepoMetadata& r : repos) lines += remote::repo_to_json(r).dump() + '\n';
        write_file(o.save_repos, lines);
    }
    info("reported " + std::to_string(repos.size()) + " repositories");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mine deleted console.log statements from commit history and summarize them"};
    app.set_config("--config", "", "TOML or INI file with option defaults; command-line flags take precedence");
    app.add_flag("-q,--quiet", quiet, "Suppress progress messages");
    app.require_subcommand(1);
    app.fallthrough();

    FilterOptions filter;
    auto* f = app.add_subcommand("filter-events", "Select commits whose message removes console.log");
    f->add_option("--archive", filter.archive, "Hourly event archive files (.json or .json.gz)");
    f->add_option("--query-sample", filter.query_sample, "Event exports from a warehouse query");
    f->add_option("--git-repo", filter.git_repo, "Scan the history of a local clone");
    f->add_option("--repo-name", filter.repo_name, "owner/name of the local clone");
    f->add_option("--since", filter.since, "Earliest push time (inclusive)");
    f->add_option("--until", filter.until, "Latest push time (exclusive)");
    auto* first = f->add_flag_callback("--first-commit-only", [&] { filter.first_commit_only = true; },
                                       "Consider only the first commit of each push");
    f->add_flag_callback("--all-commits", [&] { filter.first_commit_only = false; }, "Consider every commit of a push")
        ->excludes(first);
    f->add_flag("--case-sensitive", filter.case_sensitive, "Match the commit message case-sensitively");
    f->add_flag("--match-across-lines", filter.across_lines,
                "Let the removal verb and console.log sit on different message lines");
    f->add_option("-o,--output", filter.output, "Candidate commits (NDJSON)")->required();
    f->add_option("--diagnostics", filter.diagnostics, "Per-input counts (JSON)");

    ExtractCli extract;
    auto* e = app.add_subcommand("extract", "Fetch candidate commits and extract deleted log records");
    e->add_option("--candidates", extract.candidates, "Candidate commits (NDJSON)")->required();
    add_remote_options(e, extract.remote);
    e->add_option("-o,--output", extract.output, "Log records (NDJSON)")->required();
    e->add_option("--diagnostics", extract.diagnostics, "Per-commit status and skipped files (NDJSON)");
    e->add_option("-j,--workers", extract.workers, "Parallel commit workers")->check(CLI::PositiveNumber)->capture_default_str();
    e->add_flag("--extended-extensions", extract.extended_extensions, "Also analyze .jsx .tsx .mjs .cjs");
    e->add_flag("--no-logical-operators", extract.no_logical_operators, "Do not count && || ?? in complexity");
    e->add_option("--console-method", extract.console_methods, "Extra console methods treated as logs");

    AnalyzeCli analyze;
    auto* a = app.add_subcommand("analyze", "Summarize log records");
    a->add_option("--records", analyze.records, "Log records (NDJSON)")->required();
    a->add_option("--baseline", analyze.baseline, "Baseline output for the complexity comparison");
    a->add_option("-o,--output", analyze.output, "Report (JSON)")->required();
    a->add_option("--csv-dir", analyze.csv_dir, "Write per-table CSV files here");
    a->add_option("--top", analyze.top, "Entries in top-N tables")->check(CLI::PositiveNumber)->capture_default_str();
    a->add_flag("--word-boundary-labels", analyze.word_boundary, "Match label names on word boundaries");

    BaselineCli baseline;
    auto* b = app.add_subcommand("baseline", "Count function kinds and complexity over a source tree");
    b->add_option("--corpus", baseline.corpus, "Root of the source tree")->required();
    b->add_option("-o,--output", baseline.output, "Baseline (JSON)")->required();
    b->add_option("-j,--workers", baseline.workers, "Parallel file workers")->check(CLI::PositiveNumber)->capture_default_str();
    b->add_flag("--extended-extensions", baseline.extended_extensions, "Also parse .jsx .tsx .mjs .cjs");
    b->add_flag("--no-logical-operators", baseline.no_logical_operators, "Do not count && || ?? in complexity");

    ReportCli report;
    auto* r = app.add_subcommand("report", "Summarize repository metadata and activity");
    auto* repos_opt = r->add_option("--repos", report.repos, "Repository metadata (NDJSON)");
    r->add_option("--candidates", report.candidates, "Fetch metadata for the repositories of these candidates")
        ->excludes(repos_opt);
    add_remote_options(r, report.remote);
    r->add_option("--query-date", report.query_date, "Reference date for activity (default: today, UTC)");
    r->add_option("-o,--output", report.output, "Report (JSON)")->required();
    r->add_option("--csv-dir", report.csv_dir, "Write repositories.csv here");
    r->add_option("--save-repos", report.save_repos, "Write the fetched metadata (NDJSON)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::FileError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitInput;
    } catch (const CLI::ParseError& err) {
        return app.exit(err) == 0 ? 0 : kExitFailure;
    }

    try {
        if (f->parsed()) return run_filter(filter);
        if (e->parsed()) return run_extract(extract);
        if (a->parsed()) return run_analyze(analyze);
        if (b->parsed()) return run_baseline(baseline);
        if (r->parsed()) return run_report(report);
    } catch (const InputError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitInput;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitFailure;
    }
    return kExitFailure;
}
