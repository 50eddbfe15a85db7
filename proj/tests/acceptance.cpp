#include "adhoc/context.hpp"
#include "adhoc/diff.hpp"
#include "adhoc/js/parser.hpp"
#include "adhoc/pipeline.hpp"
#include "adhoc/process.hpp"
#include "adhoc/record.hpp"
#include "adhoc/semantics.hpp"
#include "adhoc/stats.hpp"

#include <json.hpp>

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using namespace adhoc;
using nlohmann::json;

namespace {

const fs::path kFixtures(ADHOC_FIXTURES);
const std::string kCli(ADHOC_CLI);

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("adhoc_acceptance_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

void run(const std::vector<std::string>& argv, const fs::path& cwd = {}) {
    const ProcessResult r = run_process(argv, cwd);
    if (r.exit_code != 0) {
        std::string cmd;
        for (const auto& a : argv) cmd += a + " ";
        throw std::runtime_error(cmd + "exited " + std::to_string(r.exit_code) + ": " + r.err);
    }
}

// Three commits with fixed identities and dates:
//   1. unrelated refactor that creates the sources
//   2. "remove console.log" deleting two logs in src/app.js
//   3. removal message touching only the minified bundle
fs::path make_history(const std::string& name) {
    const fs::path dir = temp_dir(name);
    const fs::path acc = kFixtures / "acceptance";
    auto commit = [&](const std::string& date, const std::string& message) {
        run({"git", "-C", dir.string(), "add", "-A"});
        run({"env", "GIT_AUTHOR_DATE=" + date, "GIT_COMMITTER_DATE=" + date, "git", "-C", dir.string(), "-c",
             "user.name=Ada Example", "-c", "user.email=ada@example.com", "-c", "commit.gpgsign=false", "commit", "-q",
             "-m", message});
    };
    run({"git", "-c", "init.defaultBranch=main", "init", "-q", dir.string()});
    fs::create_directories(dir / "src");
    fs::copy_file(acc / "app_v1.js", dir / "src/app.js");
    fs::copy_file(acc / "api.js", dir / "src/api.js");
    fs::copy_file(acc / "minified.js", dir / "src/bundle.js");
    commit("2024-03-01T10:00:00Z", "Refactor user loading into an api module");
    fs::copy_file(acc / "app_v2.js", dir / "src/app.js", fs::copy_options::overwrite_existing);
    commit("2024-03-02T11:30:00Z", "remove console.log");
    fs::copy_file(acc / "minified_after.js", dir / "src/bundle.js", fs::copy_options::overwrite_existing);
    commit("2024-03-03T09:15:00Z", "Remove console.log calls from the bundle");
    return dir;
}

std::vector<json> read_ndjson(const fs::path& p) {
    std::vector<json> out;
    std::istringstream in(read_file(p));
    for (std::string line; std::getline(in, line);) {
        if (!line.empty()) out.push_back(json::parse(line));
    }
    return out;
}

void run_pipeline(const fs::path& repo, const fs::path& out) {
    const std::vector<std::string> git = {"--git-repo", repo.string(), "--repo-name", "acme/app"};
    auto cli = [&](std::vector<std::string> args, const std::vector<std::string>& extra = {}) {
        args.insert(args.begin(), {kCli, "-q"});
        args.insert(args.end(), extra.begin(), extra.end());
        run(args);
    };
    cli({"filter-events", "-o", (out / "candidates.ndjson").string(), "--diagnostics", (out / "filter.json").string()},
        git);
    cli({"extract", "--candidates", (out / "candidates.ndjson").string(), "-o", (out / "records.ndjson").string(),
         "--diagnostics", (out / "commits.ndjson").string(), "--workers", "2"},
        git);
    cli({"baseline", "--corpus", repo.string(), "-o", (out / "baseline.json").string()});
    cli({"analyze", "--records", (out / "records.ndjson").string(), "--baseline", (out / "baseline.json").string(),
         "-o", (out / "report.json").string(), "--csv-dir", (out / "csv").string()});
    cli({"report", "--candidates", (out / "candidates.ndjson").string(), "--query-date", "2024-06-01", "-o",
         (out / "repos.json").string(), "--csv-dir", (out / "csv").string()},
        git);
}

Outcome end_to_end() {
    const auto t0 = std::chrono::steady_clock::now();
    const fs::path repo = make_history("e2e");
    const fs::path out = temp_dir("e2e_out");
    run_pipeline(repo, out);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const auto records = read_ndjson(out / "records.ndjson");
    const auto golden = read_ndjson(kFixtures / "acceptance" / "e2e.golden.ndjson");
    const auto commits = read_ndjson(out / "commits.ndjson");
    bool minified_skipped = false;
    for (const json& c : commits) {
        for (const json& s : c["skipped_files"]) {
            if (s["path"] == "src/bundle.js" && s["reason"] == "minified") minified_skipped = true;
        }
    }
    fs::remove_all(repo);
    fs::remove_all(out);
    std::ostringstream d;
    d << records.size() << " records, " << commits.size() << " candidate commits, " << seconds << " s";
    return {records.size() == 2 && records == golden && minified_skipped && seconds < 5.0, d.str()};
}

std::string first_function_name(const std::string& source) {
    auto ast = js::parse_program(source);
    const auto fns = context::find_functions(*ast);
    return fns.empty() ? "" : context::name_function(fns.front());
}

Outcome naming_examples() {
    const std::vector<std::pair<std::string, std::string>> cases = {
        {"var cb = function () { console.log(1); };", "cb"},
        {"fetch(url).then(function (res) { console.log(res); });", "then"},
        {"cb = function () { console.log(1); };", "cb"},
        {"class Text { getText = () => { console.log(this); }; }", "getText"}};
    int ok = 0;
    std::string got;
    for (const auto& [src, expected] : cases) {
        const std::string name = first_function_name(src);
        got += (got.empty() ? "" : ", ") + name;
        if (name == expected) ++ok;
    }
    return {ok == 4, got};
}

Outcome area_record() {
    auto ast = js::parse_program(read_file(kFixtures / "context" / "area.js"));
    const auto logs = context::match_deleted_logs(*ast, context::find_log_calls(*ast), {95});
    if (logs.size() != 1) return {false, "expected one log on line 95"};
    const LogRecord r = context::build_log_record(*ast, logs.front(), "src/components/algorithm/area.js",
                                                  {"owner/repo", std::string(40, 'a'), std::nullopt, std::nullopt});
    const bool pass = r.log_in_string == "console.log(pattern)" && r.function_name == "calcAreasByPattern" &&
                      r.function_type == "FunctionDeclaration" && r.complexity_of_function &&
                      r.complexity_of_function->complexity == 3 && r.log_loc.start == SourcePosition{95, 4} &&
                      r.arguments == std::vector<ArgumentInfo>{{"pattern", "Identifier"}} && !r.is_async_function &&
                      !r.is_callback_function && !r.is_anonymous_function;
    return {pass, to_json(r).dump()};
}

Outcome welch() {
    const auto t = stats::welch_t_test({1, 2, 3}, {2, 4, 6}, stats::Sidedness::two_sided);
    const auto same = stats::welch_t_test({1, 2, 3, 5}, {1, 2, 3, 5});
    bool anti = true;
    std::mt19937 rng(7);
    std::normal_distribution<double> nd(0.0, 3.0);
    std::uniform_int_distribution<int> len(2, 40);
    for (int i = 0; i < 500 && anti; ++i) {
        std::vector<double> a(len(rng));
        std::vector<double> b(len(rng));
        for (double& x : a) x = nd(rng);
        for (double& x : b) x = nd(rng) + 1.0;
        const auto ab = stats::welch_t_test(a, b);
        const auto ba = stats::welch_t_test(b, a);
        anti = std::abs(ab.t_statistic + ba.t_statistic) <= 1e-12 &&
               std::abs(ab.degrees_of_freedom - ba.degrees_of_freedom) <= 1e-12;
    }
    const bool pass = std::abs(t.t_statistic + 1.5492) <= 1e-4 && std::abs(t.degrees_of_freedom - 2.9412) <= 1e-4 &&
                      same.t_statistic == 0.0 && std::abs(same.p_value - 0.5) <= 1e-10 && anti;
    std::ostringstream d;
    d.precision(6);
    d << "t=" << t.t_statistic << " df=" << t.degrees_of_freedom << " p(identical)=" << same.p_value
      << " antisymmetric=" << (anti ? "yes" : "no");
    return {pass, d.str()};
}

Outcome intersections() {
    constexpr int kRecords = 10000;
    for (unsigned seed = 1; seed <= 100; ++seed) {
        std::mt19937 rng(seed);
        std::bernoulli_distribution coin(0.5);
        std::vector<LogRecord> records(kRecords);
        for (LogRecord& r : records) {
            r.is_async_function = coin(rng);
            r.is_callback_function = coin(rng);
            r.is_anonymous_function = coin(rng);
        }
        const stats::IntersectionTable table = stats::flag_intersections(records);
        std::int64_t sum = 0;
        for (bool a : {false, true}) {
            for (bool c : {false, true}) {
                for (bool n : {false, true}) {
                    const auto brute = std::count_if(records.begin(), records.end(), [&](const LogRecord& r) {
                        return r.is_async_function == a && r.is_callback_function == c && r.is_anonymous_function == n;
                    });
                    const std::int64_t cell = table.cells[static_cast<std::size_t>(stats::IntersectionTable::index(a, c, n))];
                    if (cell != brute) return {false, "seed " + std::to_string(seed) + " cell mismatch"};
                    sum += cell;
                }
            }
        }
        if (sum != kRecords) return {false, "seed " + std::to_string(seed) + " sums to " + std::to_string(sum)};
    }
    return {true, "100 seeds x 10000 records"};
}

// Length of the longest run of one character, with the character.
std::pair<std::size_t, char> longest_run(const std::string& s) {
    std::pair<std::size_t, char> best{0, '\0'};
    for (std::size_t i = 0; i < s.size();) {
        std::size_t j = i;
        while (j < s.size() && s[j] == s[i]) ++j;
        if (j - i > best.first) best = {j - i, s[i]};
        i = j;
    }
    return best;
}

std::size_t count_runs(const std::string& s) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i == 0 || s[i] != s[i - 1]) ++n;
    }
    return n;
}

Outcome normalization() {
    if (semantics::normalize_literal("-----") != "-R") return {false, "\"-----\" gave " + semantics::normalize_literal("-----")};
    std::mt19937 rng(2024);
    const std::string alphabet = "ab=-*R .";
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::uniform_int_distribution<int> len(0, 40);
    std::uniform_int_distribution<int> burst(1, 9);
    for (int trial = 0; trial < 10000; ++trial) {
        std::string s;
        const int n = len(rng);
        while (static_cast<int>(s.size()) < n) s.append(static_cast<std::size_t>(burst(rng)), alphabet[pick(rng)]);
        const std::string out = semantics::normalize_literal(s);
        const auto [run, ch] = longest_run(out);
        // A marker may abut at most three literal marker characters.
        const bool runs_ok = run <= 3 || (ch == 'R' && run <= 4);
        const bool bounds_ok = out.size() <= s.size() && out.size() >= count_runs(s);
        const bool stable = s.find('R') != std::string::npos || semantics::normalize_literal(out) == out;
        if (!runs_ok || !bounds_ok || !stable) return {false, "failed on \"" + s + "\" -> \"" + out + "\""};
    }
    return {true, "10000 random strings"};
}

Outcome diff_round_trip() {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> len(0, 30);
    std::uniform_int_distribution<int> word(0, 5);
    std::uniform_int_distribution<int> op(0, 9);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::string> before(static_cast<std::size_t>(len(rng)));
        for (auto& l : before) l = "line " + std::to_string(word(rng));
        std::vector<std::string> after;
        for (const auto& l : before) {
            const int o = op(rng);
            if (o == 0) continue;                                       // delete
            if (o == 1) after.push_back("new " + std::to_string(word(rng)));  // insert
            if (o == 2) {
                after.push_back("changed " + std::to_string(word(rng)));
                continue;
            }
            after.push_back(l);
        }
        if (op(rng) < 3) after.push_back("tail");
        auto join = [](const std::vector<std::string>& v) {
            std::string s;
            for (const auto& l : v) s += l + "\n";
            return s;
        };
        const std::string b = join(before);
        const std::string a = join(after);
        const diff::LineSets direct = diff::compute_line_diff(b, a);
        const diff::LineSets parsed = diff::parse_unified_diff(diff::render_unified_diff(b, a, 3, "a/f.js", "b/f.js"));
        if (!(direct == parsed)) return {false, "trial " + std::to_string(trial) + " differs"};
    }
    return {true, "200 random edit pairs"};
}

Outcome minified_gate() {
    const fs::path acc = kFixtures / "acceptance";
    const std::string mini = read_file(acc / "minified.js");
    const auto lines = diff::split_lines(mini);
    remote::CommitDetail detail{"acme/twins", std::string(40, 'b'), {}, "remove console.log", std::nullopt, {}};
    detail.files.push_back({"src/bundle.js", "modified", std::nullopt, mini, read_file(acc / "minified_after.js")});
    detail.files.push_back(
        {"src/pretty.js", "modified", std::nullopt, read_file(acc / "pretty.js"), read_file(acc / "pretty_after.js")});
    const ingest::CandidateCommit c{"acme/twins", detail.sha, detail.message, *parse_timestamp("2024-03-03"),
                                    ingest::Source::local};
    const auto result = pipeline::process_commit(c, detail);
    std::size_t from_bundle = 0;
    std::size_t from_pretty = 0;
    for (const LogRecord& r : result.records) (r.folder_path == "src_bundle_js" ? from_bundle : from_pretty)++;
    const bool skipped = result.diagnostic.skipped.size() == 1 && result.diagnostic.skipped[0].path == "src/bundle.js" &&
                         result.diagnostic.skipped[0].reason == "minified";
    const bool pass = lines.size() == 1 && mini.size() >= diff::kMinifiedPrefixChars && from_bundle == 0 &&
                      from_pretty == 3 && skipped;
    return {pass, "minified " + std::to_string(mini.size()) + " chars: " + std::to_string(from_bundle) +
                      " records; pretty twin: " + std::to_string(from_pretty) + " records"};
}

Outcome determinism() {
    const fs::path repo = make_history("det");
    const fs::path out1 = temp_dir("det_1");
    const fs::path out2 = temp_dir("det_2");
    run_pipeline(repo, out1);
    run_pipeline(repo, out2);
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(out1)) {
        if (e.is_regular_file()) files.push_back(fs::relative(e.path(), out1));
    }
    std::sort(files.begin(), files.end());
    std::size_t count2 = 0;
    for (const auto& e : fs::recursive_directory_iterator(out2)) count2 += e.is_regular_file() ? 1 : 0;
    bool same = files.size() == count2 && !files.empty();
    std::string differing;
    for (const fs::path& f : files) {
        if (!fs::exists(out2 / f) || read_file(out1 / f) != read_file(out2 / f)) {
            same = false;
            differing += " " + f.string();
        }
    }
    fs::remove_all(repo);
    fs::remove_all(out1);
    fs::remove_all(out2);
    return {same, std::to_string(files.size()) + " output files compared" + (differing.empty() ? "" : "; differ:" + differing)};
}

Outcome kappa() {
    const auto identical = stats::cohens_kappa({"label", "none", "label", "other"}, {"label", "none", "label", "other"});
    const auto chance = stats::cohens_kappa({"yes", "yes", "no", "no"}, {"yes", "no", "yes", "no"});
    const bool pass = identical && *identical == 1.0 && chance && std::abs(*chance) <= 1e-12;
    std::ostringstream d;
    d << "identical=" << (identical ? std::to_string(*identical) : "undefined")
      << " hand=" << (chance ? std::to_string(*chance) : "undefined");
    return {pass, d.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"end-to-end git history yields the golden records", end_to_end},
        {"naming examples", naming_examples},
        {"area record reconstruction", area_record},
        {"Welch t-test oracle", welch},
        {"flag intersection partition", intersections},
        {"literal normalization", normalization},
        {"unified diff round trip", diff_round_trip},
        {"minified gate", minified_gate},
        {"pipeline determinism", determinism},
        {"Cohen's kappa", kappa}};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << " (" << o.detail
                  << ")\n";
    }
    return failed == 0 ? 0 : 1;
}
