#include "adhoc/pipeline.hpp"

#include "adhoc/js/parser.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

namespace adhoc::pipeline {

using nlohmann::ordered_json;

double round6(double v) {
    if (!std::isfinite(v) || v == 0.0) return v;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::strtod(buf, nullptr);
}

std::string format6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

namespace {

double ratio(std::int64_t num, std::int64_t den) {
    return den == 0 ? 0.0 : round6(static_cast<double>(num) / static_cast<double>(den));
}

template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
    const std::size_t threads = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, workers)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) fn(i);
        });
    }
    for (std::thread& th : pool) th.join();
}

ordered_json ranked_json(const stats::Ranked& ranked) {
    ordered_json arr = ordered_json::array();
    for (const auto& [name, count] : ranked) arr.push_back({{"name", name}, {"count", count}});
    return arr;
}

ordered_json distribution_json(const stats::Counter& counter) {
    const stats::Distribution d = stats::to_distribution(counter);
    ordered_json entries = ordered_json::array();
    for (const auto& [label, count] : d.counts) {
        entries.push_back({{"label", label}, {"count", count}, {"fraction", ratio(count, d.total)}});
    }
    return {{"total", d.total}, {"entries", entries}};
}

ordered_json series_json(const stats::MonthlySeries& s) {
    ordered_json points = ordered_json::array();
    for (const stats::MonthlyPoint& p : s.points) {
        points.push_back({{"month", p.month}, {"total", p.total}, {"async", p.async}, {"percentage", round6(p.percentage)}});
    }
    return {{"available", s.available}, {"missing_timestamps", s.missing}, {"points", points}};
}

ordered_json summary_json(const stats::SummaryStats& s) {
    return {{"mean", round6(s.mean)},
            {"std_dev", round6(s.std_dev)},
            {"min", round6(s.min)},
            {"median", round6(s.median)},
            {"max", round6(s.max)}};
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string ranked_csv(const stats::Ranked& ranked) {
    std::string out = "name,count\n";
    for (const auto& [name, count] : ranked) out += csv_escape(name) + "," + std::to_string(count) + "\n";
    return out;
}

std::string series_csv(const stats::MonthlySeries& s) {
    std::string out = "month,total,async,percentage\n";
    for (const auto& p : s.points) {
        out += p.month + "," + std::to_string(p.total) + "," + std::to_string(p.async) + "," + format6(p.percentage) + "\n";
    }
    return out;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

CommitResult process_commit(const ingest::CandidateCommit& candidate, const remote::CommitDetail& detail,
                            const ExtractOptions& options) {
    CommitResult result;
    CommitDiagnostic& diag = result.diagnostic;
    diag.repo_full_name = candidate.repo_full_name;
    diag.sha = candidate.sha;

    const context::CommitInfo info{candidate.repo_full_name, candidate.sha, format_timestamp(candidate.event_time),
                                   detail.author_time};
    std::vector<const remote::ChangedFile*> files;
    for (const remote::ChangedFile& f : detail.files) files.push_back(&f);
    std::stable_sort(files.begin(), files.end(), [](const auto* a, const auto* b) { return a->path < b->path; });

    for (const remote::ChangedFile* f : files) {
        if (!diff::is_target_file(f->path, options.targets)) {
            diag.skipped.push_back({f->path, std::string(diff::exclusion_name(diff::Exclusion::non_target_extension)), ""});
            continue;
        }
        if (f->status == "added") continue;  // nothing existed to delete
        if (!f->before_content) {
            diag.skipped.push_back({f->path, "missing-content", "no pre-change content recorded"});
            continue;
        }
        diff::FileDiff fd;
        try {
            if (f->after_content || f->status == "removed") {
                fd = diff::make_file_diff(f->path, *f->before_content, f->after_content.value_or(""), options.targets);
            } else if (f->patch) {
                fd = diff::make_file_diff_from_patch(f->path, *f->before_content, *f->patch, options.targets);
            } else {
                diag.skipped.push_back({f->path, "missing-content", "no post-change content or patch recorded"});
                continue;
            }
        } catch (const diff::DiffParseError& e) {
            diag.skipped.push_back({f->path, "patch-error", e.what()});
            continue;
        }
        if (fd.excluded != diff::Exclusion::none) {
            diag.skipped.push_back({f->path, std::string(diff::exclusion_name(fd.excluded)), ""});
            continue;
        }
        ++diag.files_analyzed;
        if (fd.deleted_lines.empty()) continue;
        std::unique_ptr<js::Ast> ast;
        try {
            ast = js::parse_program(fd.before_content, js::options_for_path(f->path));
        } catch (const js::SyntaxError& e) {
            diag.skipped.push_back({f->path, "parse-error", e.what()});
            continue;
        }
        const auto calls = context::find_log_calls(*ast, options.context);
        for (const js::Node* call : context::match_deleted_logs(*ast, calls, fd.deleted_lines)) {
            result.records.push_back(context::build_log_record(*ast, call, f->path, info, options.context));
        }
    }
    diag.matched_logs = static_cast<std::int64_t>(result.records.size());
    return result;
}

ExtractResult extract(const std::vector<ingest::CandidateCommit>& candidates, remote::RemoteClient& client,
                      const ExtractOptions& options) {
    std::vector<CommitResult> results(candidates.size());
    parallel_for(candidates.size(), options.workers, [&](std::size_t i) {
        const ingest::CandidateCommit& c = candidates[i];
        CommitResult& r = results[i];
        try {
            r = process_commit(c, client.fetch_commit_detail(c.repo_full_name, c.sha), options);
        } catch (const remote::UnavailableError& e) {
            r.diagnostic = {c.repo_full_name, c.sha, "unavailable", e.what(), 0, 0, {}};
        } catch (const remote::RateLimitError& e) {
            r.diagnostic = {c.repo_full_name, c.sha, "rate-limited",
                            std::string(e.what()) + " (retry after " + std::to_string(e.wait_hint().count()) + "s)", 0, 0, {}};
        } catch (const std::exception& e) {
            r.diagnostic = {c.repo_full_name, c.sha, "error", e.what(), 0, 0, {}};
        }
    });
    ExtractResult out;
    for (CommitResult& r : results) {
        out.records.insert(out.records.end(), std::make_move_iterator(r.records.begin()),
                           std::make_move_iterator(r.records.end()));
        out.commits.push_back(std::move(r.diagnostic));
    }
    return out;
}

ordered_json to_json(const CommitDiagnostic& d) {
    ordered_json j;
    j["repo_full_name"] = d.repo_full_name;
    j["sha"] = d.sha;
    j["status"] = d.status;
    if (!d.error.empty()) j["error"] = d.error;
    j["files_analyzed"] = d.files_analyzed;
    j["matched_logs"] = d.matched_logs;
    ordered_json skipped = ordered_json::array();
    for (const SkippedFile& s : d.skipped) {
        ordered_json e = {{"path", s.path}, {"reason", s.reason}};
        if (!s.detail.empty()) e["detail"] = s.detail;
        skipped.push_back(e);
    }
    j["skipped_files"] = skipped;
    return j;
}

void CorpusAccumulator::add(const LogRecord& r, const semantics::LabelOptions& label) {
    ++records_;
    blocks_.add(r.block_statement);
    function_types_.add(r.function_type);
    flags_.add(r.is_async_function, r.is_callback_function, r.is_anonymous_function);
    event_series_.add(r);
    author_series_.add(r);
    for (const std::string& n : stats::name_values(r, stats::NameKey::function_name)) function_names_.add(n);
    for (const std::string& n : stats::name_values(r, stats::NameKey::callback_callee_name)) callback_callees_.add(n);

    try {
        const semantics::ArgumentProfile p = semantics::profile_log_text(r.log_in_string, label);
        ++arg_counts_[p.arg_count];
        for (std::size_t i = 0; i < p.kinds.size(); ++i) {
            if (p.kinds[i] == semantics::ArgKind::literal || p.kinds[i] == semantics::ArgKind::template_literal) {
                literals_.add(semantics::normalize_literal(p.literal_texts[i]));
            }
        }
        if (p.has_literal) ++with_string_literal_;
        if (p.has_any_literal) ++with_any_literal_;
        if (p.arg_count == 2) {
            ++two_arg_;
            if (p.label_names_other) ++labeled_;
        }
        if (!p.embedded_callee_names.empty()) ++with_embedded_call_;
        for (const std::string& c : p.embedded_callee_names) embedded_callees_.add(c);
    } catch (const std::exception&) {
        ++unparsed_logs_;
        ++arg_counts_[static_cast<int>(r.arguments.size())];
    }

    if (r.complexity_of_function) {
        const std::string key = r.repository_name + "\n" + r.commit_sha + "\n" + r.folder_path + "\n" +
                                std::to_string(r.complexity_of_function->line) + "\n" + r.complexity_of_function->name;
        complexities_.emplace(key, r.complexity_of_function->complexity);
    }
}

void CorpusAccumulator::merge(const CorpusAccumulator& o) {
    records_ += o.records_;
    blocks_.merge(o.blocks_);
    function_types_.merge(o.function_types_);
    flags_.merge(o.flags_);
    event_series_.merge(o.event_series_);
    author_series_.merge(o.author_series_);
    function_names_.merge(o.function_names_);
    callback_callees_.merge(o.callback_callees_);
    literals_.merge(o.literals_);
    for (const auto& [k, n] : o.arg_counts_) arg_counts_[k] += n;
    embedded_callees_.merge(o.embedded_callees_);
    unparsed_logs_ += o.unparsed_logs_;
    with_string_literal_ += o.with_string_literal_;
    with_any_literal_ += o.with_any_literal_;
    two_arg_ += o.two_arg_;
    labeled_ += o.labeled_;
    with_embedded_call_ += o.with_embedded_call_;
    complexities_.insert(o.complexities_.begin(), o.complexities_.end());
}

ordered_json CorpusAccumulator::report(const AnalyzeOptions& options) const {
    ordered_json j;
    j["records"] = records_;
    j["block_distribution"] = distribution_json(blocks_);
    j["function_types"] = distribution_json(function_types_);

    ordered_json flags;
    std::int64_t marg[3] = {0, 0, 0};
    ordered_json cells = ordered_json::array();
    for (int i = 0; i < 8; ++i) {
        const std::int64_t n = flags_.cells[static_cast<std::size_t>(i)];
        if ((i & 4) != 0) marg[0] += n;
        if ((i & 2) != 0) marg[1] += n;
        if ((i & 1) != 0) marg[2] += n;
        cells.push_back({{"cell", stats::IntersectionTable::label(i)},
                         {"async", (i & 4) != 0},
                         {"callback", (i & 2) != 0},
                         {"anonymous", (i & 1) != 0},
                         {"count", n},
                         {"fraction", ratio(n, records_)}});
    }
    flags["async"] = marg[0];
    flags["callback"] = marg[1];
    flags["anonymous"] = marg[2];
    flags["intersections"] = cells;
    j["function_flags"] = flags;

    j["monthly_async"] = {{"event_time", series_json(event_series_.series())},
                          {"author_time", series_json(author_series_.series())}};
    j["top_function_names"] = ranked_json(function_names_.top(options.top_n));
    j["top_callback_callees"] = ranked_json(callback_callees_.top(options.top_n));
    j["top_literals"] = ranked_json(literals_.top(options.top_n));

    ordered_json args;
    ordered_json counts = ordered_json::array();
    for (const auto& [k, n] : arg_counts_) counts.push_back({{"arguments", k}, {"count", n}, {"fraction", ratio(n, records_)}});
    args["argument_counts"] = counts;
    args["unparsed_logs"] = unparsed_logs_;
    args["with_string_literal"] = {{"count", with_string_literal_}, {"fraction", ratio(with_string_literal_, records_)}};
    args["with_any_literal"] = {{"count", with_any_literal_}, {"fraction", ratio(with_any_literal_, records_)}};
    args["two_argument_logs"] = two_arg_;
    args["label_names_other"] = {{"count", labeled_}, {"fraction_of_two_argument", ratio(labeled_, two_arg_)}};
    args["with_embedded_call"] = {{"count", with_embedded_call_}, {"fraction", ratio(with_embedded_call_, records_)}};
    args["top_embedded_callees"] = ranked_json(embedded_callees_.top(options.top_n));
    j["arguments"] = args;

    ordered_json cx;
    std::vector<double> values;
    for (const auto& [key, c] : complexities_) values.push_back(c);
    cx["functions"] = values.size();
    cx["summary"] = values.empty() ? ordered_json(nullptr) : summary_json(stats::summary_stats(values));
    ordered_json welch;
    if (!options.baseline_complexities) {
        welch = {{"available", false}, {"reason", "no baseline sample"}};
    } else {
        try {
            const stats::TTestResult t = stats::welch_t_test(values, *options.baseline_complexities);
            welch = {{"available", true},
                     {"sidedness", "one-sided-greater"},
                     {"log_functions", values.size()},
                     {"baseline_functions", options.baseline_complexities->size()},
                     {"t_statistic", round6(t.t_statistic)},
                     {"degrees_of_freedom", round6(t.degrees_of_freedom)},
                     {"p_value", round6(t.p_value)}};
        } catch (const ArgumentError& e) {
            welch = {{"available", false}, {"reason", e.what()}};
        }
    }
    cx["welch_vs_baseline"] = welch;
    j["complexity"] = cx;
    return j;
}

std::vector<std::pair<std::string, std::string>> CorpusAccumulator::csv_tables(const AnalyzeOptions& options) const {
    std::vector<std::pair<std::string, std::string>> out;
    auto distribution_csv = [&](const stats::Counter& c) {
        std::string s = "label,count,fraction\n";
        const stats::Distribution d = stats::to_distribution(c);
        for (const auto& [label, n] : d.counts) {
            s += csv_escape(label) + "," + std::to_string(n) + "," + format6(ratio(n, d.total)) + "\n";
        }
        return s;
    };
    out.emplace_back("block_distribution.csv", distribution_csv(blocks_));
    out.emplace_back("function_types.csv", distribution_csv(function_types_));
    std::string cells = "cell,async,callback,anonymous,count\n";
    for (int i = 0; i < 8; ++i) {
        cells += stats::IntersectionTable::label(i) + "," + ((i & 4) != 0 ? "1" : "0") + "," + ((i & 2) != 0 ? "1" : "0") +
                 "," + ((i & 1) != 0 ? "1" : "0") + "," + std::to_string(flags_.cells[static_cast<std::size_t>(i)]) + "\n";
    }
    out.emplace_back("function_flags.csv", cells);
    out.emplace_back("monthly_async_event_time.csv", series_csv(event_series_.series()));
    out.emplace_back("monthly_async_author_time.csv", series_csv(author_series_.series()));
    out.emplace_back("top_function_names.csv", ranked_csv(function_names_.top(options.top_n)));
    out.emplace_back("top_callback_callees.csv", ranked_csv(callback_callees_.top(options.top_n)));
    out.emplace_back("top_literals.csv", ranked_csv(literals_.top(options.top_n)));
    out.emplace_back("top_embedded_callees.csv", ranked_csv(embedded_callees_.top(options.top_n)));
    return out;
}

ordered_json analyze(const std::vector<LogRecord>& records, const AnalyzeOptions& options) {
    CorpusAccumulator acc;
    for (const LogRecord& r : records) acc.add(r, options.label);
    return acc.report(options);
}

BaselineResult run_baseline(const std::filesystem::path& root, const diff::TargetOptions& targets,
                            bool count_logical_operators, int workers) {
    std::vector<std::filesystem::path> files;
    for (auto it = std::filesystem::recursive_directory_iterator(root); it != std::filesystem::recursive_directory_iterator();
         ++it) {
        const auto& entry = *it;
        if (entry.is_directory() && entry.path().filename() == ".git") {
            it.disable_recursion_pending();
            continue;
        }
        if (!entry.is_regular_file()) continue;
        const std::string rel = std::filesystem::relative(entry.path(), root).generic_string();
        if (diff::is_target_file(rel, targets) && !diff::detect_library(rel)) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    struct FileOutcome {
        stats::BaselineCounts counts;
        bool parsed = false;
        std::string error;
    };
    std::vector<FileOutcome> outcomes(files.size());
    parallel_for(files.size(), workers, [&](std::size_t i) {
        const std::string source = diff::normalize_line_endings(read_file(files[i]));
        if (source.size() > diff::kMaxFileBytes) {
            outcomes[i].error = "oversized";
            return;
        }
        if (diff::detect_minified(source)) {
            outcomes[i].error = "minified";
            return;
        }
        try {
            const auto ast = js::parse_program(source, js::options_for_path(files[i].string()));
            outcomes[i].counts.add_file(*ast, count_logical_operators);
            outcomes[i].parsed = true;
        } catch (const js::SyntaxError& e) {
            outcomes[i].error = std::string("parse error: ") + e.what();
        }
    });
    BaselineResult result;
    for (std::size_t i = 0; i < files.size(); ++i) {
        if (outcomes[i].parsed) {
            ++result.files_parsed;
            result.counts.merge(outcomes[i].counts);
        } else {
            result.failures.emplace_back(std::filesystem::relative(files[i], root).generic_string(), outcomes[i].error);
        }
    }
    return result;
}

ordered_json to_json(const BaselineResult& b) {
    ordered_json j;
    j["files_parsed"] = b.files_parsed;
    ordered_json failures = ordered_json::array();
    for (const auto& [path, error] : b.failures) failures.push_back({{"path", path}, {"error", error}});
    j["files_skipped"] = failures;
    j["total"] = b.counts.total;
    j["async"] = b.counts.async;
    j["anonymous"] = b.counts.anonymous;
    j["callback"] = b.counts.callback;
    j["others"] = b.counts.others;
    std::vector<double> values(b.counts.complexities.begin(), b.counts.complexities.end());
    j["complexity_summary"] = values.empty() ? ordered_json(nullptr) : summary_json(stats::summary_stats(values));
    j["complexities"] = b.counts.complexities;
    return j;
}

ordered_json repo_report(std::vector<RepoMetadata> repos, Timestamp query_date) {
    std::sort(repos.begin(), repos.end(), [](const auto& a, const auto& b) { return a.full_name < b.full_name; });
    ordered_json j;
    j["query_date"] = format_timestamp(query_date);
    j["repositories"] = repos.size();
    std::int64_t active = 0;
    ordered_json rows = ordered_json::array();
    for (RepoMetadata& r : repos) {
        r.is_active = is_active(r.last_updated, query_date);
        if (r.is_active) ++active;
        rows.push_back({{"full_name", r.full_name},
                        {"description", r.description},
                        {"contributors", r.contributors},
                        {"stars", r.stars},
                        {"forks_count", r.forks_count},
                        {"watchers_count", r.watchers_count},
                        {"size", r.size_kb},
                        {"lastUpdated", format_timestamp(r.last_updated)},
                        {"isActive", r.is_active}});
    }
    j["active"] = {{"count", active}, {"fraction", ratio(active, static_cast<std::int64_t>(repos.size()))}};
    ordered_json summary;
    if (!repos.empty()) {
        auto metric = [&](auto field) {
            std::vector<double> v;
            for (const RepoMetadata& r : repos) v.push_back(static_cast<double>(field(r)));
            return summary_json(stats::summary_stats(v));
        };
        summary["stars"] = metric([](const RepoMetadata& r) { return r.stars; });
        summary["forks_count"] = metric([](const RepoMetadata& r) { return r.forks_count; });
        summary["watchers_count"] = metric([](const RepoMetadata& r) { return r.watchers_count; });
        summary["contributors"] = metric([](const RepoMetadata& r) { return r.contributors; });
        summary["size"] = metric([](const RepoMetadata& r) { return r.size_kb; });
        ordered_json curve = ordered_json::array();
        for (const auto& [m, f] : stats::cumulative_activity_curve(repos, query_date)) {
            curve.push_back({{"months_since_update", m}, {"cumulative_fraction", round6(f)}});
        }
        j["summary"] = summary;
        j["activity_curve"] = curve;
    } else {
        j["summary"] = nullptr;
        j["activity_curve"] = ordered_json::array();
    }
    j["table"] = rows;
    return j;
}

std::string repo_table_csv(const ordered_json& report) {
    static const char* const kColumns[] = {"full_name", "description", "contributors", "stars", "forks_count",
                                           "watchers_count", "size", "lastUpdated", "isActive"};
    std::string out;
    for (const char* c : kColumns) out += std::string(out.empty() ? "" : ",") + c;
    out += '\n';
    for (const auto& row : report.at("table")) {
        bool first = true;
        for (const char* c : kColumns) {
            const auto& v = row.at(c);
            out += first ? "" : ",";
            out += csv_escape(v.is_string() ? v.get<std::string>() : v.dump());
            first = false;
        }
        out += '\n';
    }
    return out;
}

}  // namespace adhoc::pipeline
