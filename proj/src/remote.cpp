#include <httplib.h>

#include "adhoc/remote.hpp"

#include "adhoc/diff.hpp"
#include "adhoc/process.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

namespace adhoc::remote {

using nlohmann::json;

namespace {

std::optional<std::string> opt_string(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key) || !j.at(key).is_string()) return std::nullopt;
    return j.at(key).get<std::string>();
}

std::optional<std::string> normalized_time(const std::optional<std::string>& text) {
    if (!text) return std::nullopt;
    const auto t = parse_timestamp(*text);
    if (!t) return std::nullopt;
    return format_timestamp(*t);
}

std::int64_t count_field(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number_integer()) return 0;
    return std::max<std::int64_t>(0, j.at(key).get<std::int64_t>());
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw RemoteError("cannot read " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& p, const std::string& content) {
    std::filesystem::create_directories(p.parent_path());
    const std::filesystem::path tmp = p.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        if (!out) throw RemoteError("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, p);
}

std::pair<std::string, std::string> split_repo(const std::string& full_name) {
    const auto slash = full_name.find('/');
    if (slash == std::string::npos || full_name.find('/', slash + 1) != std::string::npos) {
        throw RemoteError("repository name '" + full_name + "' is not owner/name");
    }
    return {full_name.substr(0, slash), full_name.substr(slash + 1)};
}

std::string percent_encode_path(std::string_view path) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : path) {
        if (std::isalnum(c) != 0 || c == '-' || c == '_' || c == '.' || c == '~' || c == '/') {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 15]);
        }
    }
    return out;
}

}  // namespace

nlohmann::ordered_json to_json(const CommitDetail& d) {
    nlohmann::ordered_json j;
    j["sha"] = d.sha;
    nlohmann::ordered_json commit;
    commit["message"] = d.message;
    commit["author"] = {{"date", d.author_time ? nlohmann::ordered_json(*d.author_time) : nullptr}};
    j["commit"] = commit;
    j["parents"] = nlohmann::ordered_json::array();
    for (const std::string& p : d.parents) j["parents"].push_back({{"sha", p}});
    j["files"] = nlohmann::ordered_json::array();
    for (const ChangedFile& f : d.files) {
        nlohmann::ordered_json fj;
        fj["filename"] = f.path;
        fj["status"] = f.status;
        if (f.patch) fj["patch"] = *f.patch;
        if (f.before_content) fj["before_content"] = *f.before_content;
        if (f.after_content) fj["after_content"] = *f.after_content;
        j["files"].push_back(fj);
    }
    return j;
}

CommitDetail commit_from_json(const json& j, const std::string& repo_full_name) {
    if (!j.is_object()) throw RemoteError("commit response is not an object");
    CommitDetail d;
    d.repo_full_name = repo_full_name;
    d.sha = opt_string(j, "sha").value_or("");
    if (d.sha.empty()) throw RemoteError("commit response has no sha");
    if (j.contains("commit") && j.at("commit").is_object()) {
        const json& c = j.at("commit");
        d.message = opt_string(c, "message").value_or("");
        if (c.contains("author") && c.at("author").is_object()) {
            d.author_time = normalized_time(opt_string(c.at("author"), "date"));
        }
    }
    if (j.contains("parents") && j.at("parents").is_array()) {
        for (const json& p : j.at("parents")) {
            if (auto s = opt_string(p, "sha")) d.parents.push_back(*s);
        }
    }
    if (!j.contains("files") || !j.at("files").is_array()) throw RemoteError("commit response has no file list");
    for (const json& f : j.at("files")) {
        ChangedFile cf;
        cf.path = opt_string(f, "filename").value_or("");
        if (cf.path.empty()) throw RemoteError("changed file without a name");
        cf.status = opt_string(f, "status").value_or("modified");
        cf.patch = opt_string(f, "patch");
        cf.before_content = opt_string(f, "before_content");
        cf.after_content = opt_string(f, "after_content");
        d.files.push_back(std::move(cf));
    }
    return d;
}

nlohmann::ordered_json repo_to_json(const RepoMetadata& r) {
    nlohmann::ordered_json j;
    j["full_name"] = r.full_name;
    j["description"] = r.description;
    j["contributors_count"] = r.contributors;
    j["stargazers_count"] = r.stars;
    j["forks_count"] = r.forks_count;
    j["watchers_count"] = r.watchers_count;
    j["size"] = r.size_kb;
    j["updated_at"] = format_timestamp(r.last_updated);
    return j;
}

RepoMetadata repo_from_json(const json& j) {
    if (!j.is_object()) throw RemoteError("repository response is not an object");
    RepoMetadata r;
    r.full_name = opt_string(j, "full_name").value_or("");
    r.description = opt_string(j, "description").value_or("");
    r.contributors = count_field(j, "contributors_count");
    r.stars = count_field(j, "stargazers_count");
    r.forks_count = count_field(j, "forks_count");
    r.watchers_count = count_field(j, "watchers_count");
    r.size_kb = count_field(j, "size");
    const auto updated = parse_timestamp(opt_string(j, "updated_at").value_or(""));
    if (!updated) throw RemoteError("repository response has no updated_at");
    r.last_updated = *updated;
    return r;
}

std::filesystem::path fixture_dir(const std::filesystem::path& root, const std::string& repo_full_name) {
    const auto [owner, name] = split_repo(repo_full_name);
    return root / (owner + "__" + name);
}

CommitDetail FixtureClient::fetch_commit_detail(const std::string& repo_full_name, const std::string& sha) {
    const std::filesystem::path p = fixture_dir(root_, repo_full_name) / (sha + ".json");
    if (!std::filesystem::is_regular_file(p)) throw UnavailableError("no recorded response for " + repo_full_name + "@" + sha);
    try {
        return commit_from_json(json::parse(read_file(p)), repo_full_name);
    } catch (const json::exception& e) {
        throw RemoteError("corrupt recorded response " + p.string() + ": " + e.what());
    }
}

RepoMetadata FixtureClient::fetch_repo_metadata(const std::string& repo_full_name) {
    const std::filesystem::path p = fixture_dir(root_, repo_full_name) / "repo.json";
    if (!std::filesystem::is_regular_file(p)) throw UnavailableError("no recorded repository for " + repo_full_name);
    try {
        RepoMetadata r = repo_from_json(json::parse(read_file(p)));
        if (r.full_name.empty()) r.full_name = repo_full_name;
        return r;
    } catch (const json::exception& e) {
        throw RemoteError("corrupt recorded response " + p.string() + ": " + e.what());
    }
}

CommitDetail RecordingClient::fetch_commit_detail(const std::string& repo_full_name, const std::string& sha) {
    CommitDetail d = inner_.fetch_commit_detail(repo_full_name, sha);
    const std::string text = to_json(d).dump(2) + "\n";
    std::lock_guard lock(mutex_);
    write_file_atomic(fixture_dir(root_, repo_full_name) / (sha + ".json"), text);
    return d;
}

RepoMetadata RecordingClient::fetch_repo_metadata(const std::string& repo_full_name) {
    RepoMetadata r = inner_.fetch_repo_metadata(repo_full_name);
    const std::string text = repo_to_json(r).dump(2) + "\n";
    std::lock_guard lock(mutex_);
    write_file_atomic(fixture_dir(root_, repo_full_name) / "repo.json", text);
    return r;
}

TokenBucket::TokenBucket(double capacity, double rate, Clock clock, Sleeper sleep)
    : capacity_(std::max(1.0, capacity)),
      rate_(rate),
      tokens_(capacity_),
      clock_(clock ? std::move(clock) : Clock([] { return std::chrono::steady_clock::now(); })),
      sleep_(sleep ? std::move(sleep) : Sleeper([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); })),
      last_(clock_()) {}

void TokenBucket::refill() {
    const auto now = clock_();
    const double elapsed = std::chrono::duration<double>(now - last_).count();
    if (elapsed > 0) {
        tokens_ = std::min(capacity_, tokens_ + elapsed * rate_);
        last_ = now;
    }
}

void TokenBucket::acquire() {
    std::lock_guard lock(mutex_);
    refill();
    if (tokens_ < 1.0) {
        if (rate_ <= 0) throw RateLimitError("request budget exhausted", std::chrono::seconds(0));
        const double wait = (1.0 - tokens_) / rate_;
        sleep_(std::chrono::milliseconds(static_cast<std::int64_t>(std::ceil(wait * 1000.0))));
        refill();
        tokens_ = std::max(tokens_, 1.0);
    }
    tokens_ -= 1.0;
}

double TokenBucket::available() {
    std::lock_guard lock(mutex_);
    refill();
    return tokens_;
}

struct GitHubClient::Impl {
    std::string scheme_host_port;
    std::string path_prefix;
    TokenBucket bucket;
    Sleeper sleep;
    Impl(std::string shp, std::string prefix, double burst, double rate, Clock clock, Sleeper s)
        : scheme_host_port(std::move(shp)), path_prefix(std::move(prefix)), bucket(burst, rate, clock, s), sleep(s) {}
};

GitHubClient::GitHubClient(GitHubConfig config) : config_(std::move(config)) {
    if (!config_.sleep) config_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
    static const std::regex url(R"(^(https?://[^/]+)(/.*)?$)");
    std::smatch m;
    if (!std::regex_match(config_.base_url, m, url)) throw RemoteError("invalid base URL " + config_.base_url);
    std::string prefix = m[2].str();
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    impl_ = std::make_unique<Impl>(m[1].str(), prefix, config_.burst, config_.requests_per_second, config_.clock,
                                   config_.sleep);
}

GitHubClient::~GitHubClient() = default;

GitHubClient::Response GitHubClient::get(const std::string& path, const std::string& accept) {
    std::chrono::milliseconds backoff = config_.initial_backoff;
    std::chrono::seconds last_hint{0};
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
        impl_->bucket.acquire();
        httplib::Client client(impl_->scheme_host_port);
        client.set_connection_timeout(10);
        client.set_read_timeout(60);
        client.set_follow_location(true);
        httplib::Headers headers = {{"Accept", accept}, {"User-Agent", "adhoc-logs"}};
        if (!config_.token.empty()) headers.emplace("Authorization", "Bearer " + config_.token);
        const httplib::Result res = client.Get(impl_->path_prefix + path, headers);

        std::chrono::milliseconds wait = backoff;
        if (res) {
            const int status = res->status;
            if (status >= 200 && status < 300) {
                Response r;
                r.status = status;
                r.body = res->body;
                for (const auto& [k, v] : res->headers) r.headers.emplace(k, v);
                return r;
            }
            if (status == 404 || status == 409 || status == 410 || status == 422 || status == 451) {
                throw UnavailableError("GET " + path + " returned " + std::to_string(status));
            }
            const bool limited = status == 429 || (status == 403 && (res->get_header_value("X-RateLimit-Remaining") == "0" ||
                                                                     res->has_header("Retry-After")));
            if (status == 403 && !limited) throw UnavailableError("GET " + path + " returned 403");
            if (!limited && status < 500) throw RemoteError("GET " + path + " returned " + std::to_string(status));
            if (limited) {
                if (res->has_header("Retry-After")) {
                    last_hint = std::chrono::seconds(std::atoll(res->get_header_value("Retry-After").c_str()));
                } else if (res->has_header("X-RateLimit-Reset")) {
                    const std::int64_t reset = std::atoll(res->get_header_value("X-RateLimit-Reset").c_str());
                    const std::int64_t now = std::chrono::duration_cast<std::chrono::seconds>(
                                                 std::chrono::system_clock::now().time_since_epoch())
                                                 .count();
                    last_hint = std::chrono::seconds(std::max<std::int64_t>(0, reset - now));
                } else {
                    last_hint = std::chrono::duration_cast<std::chrono::seconds>(backoff);
                }
                wait = std::max(backoff, std::chrono::duration_cast<std::chrono::milliseconds>(last_hint));
            }
        }
        if (attempt == config_.max_retries) break;
        impl_->sleep(std::min(wait, config_.max_backoff));
        backoff = std::min(backoff * 2, config_.max_backoff);
    }
    throw RateLimitError("GET " + path + " failed after " + std::to_string(config_.max_retries + 1) + " attempts",
                         last_hint);
}

CommitDetail GitHubClient::fetch_commit_detail(const std::string& repo_full_name, const std::string& sha) {
    split_repo(repo_full_name);
    const Response r = get("/repos/" + repo_full_name + "/commits/" + sha);
    CommitDetail d;
    try {
        d = commit_from_json(json::parse(r.body), repo_full_name);
    } catch (const json::exception& e) {
        throw RemoteError("malformed commit response: " + std::string(e.what()));
    }
    const diff::TargetOptions targets{config_.extended_extensions};
    for (ChangedFile& f : d.files) {
        if (!diff::is_target_file(f.path, targets)) continue;
        const std::string contents = "/repos/" + repo_full_name + "/contents/" + percent_encode_path(f.path) + "?ref=";
        if (f.status != "added" && !d.parents.empty()) {
            f.before_content = get(contents + d.parents.front(), "application/vnd.github.raw+json").body;
        }
        if (f.status != "removed") f.after_content = get(contents + d.sha, "application/vnd.github.raw+json").body;
    }
    return d;
}

RepoMetadata GitHubClient::fetch_repo_metadata(const std::string& repo_full_name) {
    split_repo(repo_full_name);
    RepoMetadata m;
    try {
        m = repo_from_json(json::parse(get("/repos/" + repo_full_name).body));
    } catch (const json::exception& e) {
        throw RemoteError("malformed repository response: " + std::string(e.what()));
    }
    const Response c = get("/repos/" + repo_full_name + "/contributors?per_page=1&anon=true");
    static const std::regex last_page(R"([?&]page=(\d+)>; rel="last")");
    std::smatch match;
    const auto link = c.headers.find("Link");
    if (link != c.headers.end() && std::regex_search(link->second, match, last_page)) {
        m.contributors = std::stoll(match[1].str());
    } else if (!c.body.empty()) {
        const json arr = json::parse(c.body, nullptr, false);
        m.contributors = arr.is_array() ? static_cast<std::int64_t>(arr.size()) : 0;
    }
    if (m.full_name.empty()) m.full_name = repo_full_name;
    return m;
}

std::string LocalGitClient::git(const std::vector<std::string>& args, bool allow_failure, bool* ok) const {
    std::vector<std::string> argv = {"git", "-C", dir_.string()};
    argv.insert(argv.end(), args.begin(), args.end());
    const ProcessResult r = run_process(argv);
    if (ok != nullptr) *ok = r.exit_code == 0;
    if (r.exit_code != 0 && !allow_failure) {
        throw RemoteError("git " + (args.empty() ? std::string() : args.front()) + " failed: " + r.err);
    }
    return r.out;
}

CommitDetail LocalGitClient::fetch_commit_detail(const std::string& repo_full_name, const std::string& sha) {
    bool ok = false;
    git({"cat-file", "-e", sha + "^{commit}"}, true, &ok);
    if (!ok) throw UnavailableError("commit " + sha + " not found in " + dir_.string());

    CommitDetail d;
    d.repo_full_name = repo_full_name.empty() ? name_ : repo_full_name;
    std::istringstream parents(git({"rev-list", "--parents", "-n", "1", sha}));
    parents >> d.sha;
    for (std::string p; parents >> p;) d.parents.push_back(p);

    const std::string meta = git({"show", "-s", "--format=%aI%x00%B", sha});
    const auto nul = meta.find('\0');
    d.author_time = normalized_time(meta.substr(0, nul));
    if (nul != std::string::npos) {
        d.message = meta.substr(nul + 1);
        while (!d.message.empty() && (d.message.back() == '\n' || d.message.back() == ' ')) d.message.pop_back();
    }

    std::vector<std::string> args = {"diff-tree", "-r", "-z", "--no-renames", "--no-commit-id", "--name-status"};
    if (d.parents.empty()) {
        args.push_back("--root");
        args.push_back(d.sha);
    } else {
        args.push_back(d.parents.front());
        args.push_back(d.sha);
    }
    const std::string listing = git(args);
    std::vector<std::string> fields;
    for (std::size_t start = 0; start < listing.size();) {
        const auto end = listing.find('\0', start);
        fields.push_back(listing.substr(start, end - start));
        if (end == std::string::npos) break;
        start = end + 1;
    }
    const diff::TargetOptions targets{true};
    for (std::size_t i = 0; i + 1 < fields.size(); i += 2) {
        ChangedFile f;
        f.path = fields[i + 1];
        const char code = fields[i].empty() ? 'M' : fields[i][0];
        f.status = code == 'A' ? "added" : code == 'D' ? "removed" : code == 'M' ? "modified" : "changed";
        if (diff::is_target_file(f.path, targets)) {
            if (code != 'A' && !d.parents.empty()) f.before_content = git({"show", d.parents.front() + ":" + f.path});
            if (code != 'D') f.after_content = git({"show", d.sha + ":" + f.path});
        }
        d.files.push_back(std::move(f));
    }
    std::sort(d.files.begin(), d.files.end(), [](const ChangedFile& a, const ChangedFile& b) { return a.path < b.path; });
    return d;
}

RepoMetadata LocalGitClient::fetch_repo_metadata(const std::string& repo_full_name) {
    RepoMetadata m;
    m.full_name = repo_full_name.empty() ? name_ : repo_full_name;
    std::string last = git({"log", "-1", "--format=%cI"});
    while (!last.empty() && last.back() == '\n') last.pop_back();
    const auto t = parse_timestamp(last);
    if (!t) throw RemoteError("repository has no commits");
    m.last_updated = *t;
    std::set<std::string> authors;
    std::istringstream emails(git({"log", "--format=%ae"}));
    for (std::string e; std::getline(emails, e);) authors.insert(e);
    m.contributors = static_cast<std::int64_t>(authors.size());
    return m;
}

std::vector<LocalGitClient::LogEntry> LocalGitClient::log() const {
    const std::string out = git({"log", "--reverse", "--format=%H%x00%cI%x00%B%x1e"});
    std::vector<LogEntry> entries;
    for (std::size_t start = 0; start < out.size();) {
        auto end = out.find('\x1e', start);
        if (end == std::string::npos) end = out.size();
        std::string record = out.substr(start, end - start);
        start = end + 1;
        while (!record.empty() && record.front() == '\n') record.erase(0, 1);
        const auto a = record.find('\0');
        const auto b = a == std::string::npos ? std::string::npos : record.find('\0', a + 1);
        if (b == std::string::npos) continue;
        LogEntry e;
        e.sha = record.substr(0, a);
        e.commit_time = normalized_time(record.substr(a + 1, b - a - 1)).value_or("");
        e.message = record.substr(b + 1);
        while (!e.message.empty() && (e.message.back() == '\n' || e.message.back() == ' ')) e.message.pop_back();
        entries.push_back(std::move(e));
    }
    return entries;
}

}  // namespace adhoc::remote
