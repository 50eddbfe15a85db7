#pragma once

#include "adhoc/repo.hpp"
#include "adhoc/time.hpp"

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace adhoc::remote {

struct ChangedFile {
    std::string path;
    std::string status;  // added, modified, removed, ...
    std::optional<std::string> patch;
    std::optional<std::string> before_content;
    std::optional<std::string> after_content;
    bool operator==(const ChangedFile&) const = default;
};

struct CommitDetail {
    std::string repo_full_name;
    std::string sha;
    std::vector<std::string> parents;
    std::string message;
    std::optional<std::string> author_time;  // ISO-8601 UTC
    std::vector<ChangedFile> files;
    bool operator==(const CommitDetail&) const = default;
};

// Recorded form: the shape of the hosting service's commit response, with
// file contents inlined next to each patch.
nlohmann::ordered_json to_json(const CommitDetail& detail);
CommitDetail commit_from_json(const nlohmann::json& j, const std::string& repo_full_name);

nlohmann::ordered_json repo_to_json(const RepoMetadata& repo);
RepoMetadata repo_from_json(const nlohmann::json& j);

class RemoteError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Repository or commit deleted, private or absent from the fixture store.
class UnavailableError : public RemoteError {
public:
    using RemoteError::RemoteError;
};

class RateLimitError : public RemoteError {
public:
    RateLimitError(const std::string& message, std::chrono::seconds wait_hint)
        : RemoteError(message), wait_hint_(wait_hint) {}
    std::chrono::seconds wait_hint() const { return wait_hint_; }

private:
    std::chrono::seconds wait_hint_;
};

class RemoteClient {
public:
    virtual ~RemoteClient() = default;
    virtual CommitDetail fetch_commit_detail(const std::string& repo_full_name, const std::string& sha) = 0;
    // is_active is left false; it depends on the caller's query date.
    virtual RepoMetadata fetch_repo_metadata(const std::string& repo_full_name) = 0;
};

// "owner/name" -> root / "owner__name"
std::filesystem::path fixture_dir(const std::filesystem::path& root, const std::string& repo_full_name);

// Replays recorded responses from root/<owner>__<name>/<sha>.json and
// root/<owner>__<name>/repo.json.
class FixtureClient : public RemoteClient {
public:
    explicit FixtureClient(std::filesystem::path root) : root_(std::move(root)) {}
    CommitDetail fetch_commit_detail(const std::string& repo_full_name, const std::string& sha) override;
    RepoMetadata fetch_repo_metadata(const std::string& repo_full_name) override;

private:
    std::filesystem::path root_;
};

// Forwards to another client and stores every successful response in the
// fixture layout.
class RecordingClient : public RemoteClient {
public:
    RecordingClient(RemoteClient& inner, std::filesystem::path root) : inner_(inner), root_(std::move(root)) {}
    CommitDetail fetch_commit_detail(const std::string& repo_full_name, const std::string& sha) override;
    RepoMetadata fetch_repo_metadata(const std::string& repo_full_name) override;

private:
    RemoteClient& inner_;
    std::filesystem::path root_;
    std::mutex mutex_;
};

using Clock = std::function<std::chrono::steady_clock::time_point()>;
using Sleeper = std::function<void(std::chrono::milliseconds)>;

// Shared request budget: holds up to `capacity` tokens, refilled at `rate`
// tokens per second. Thread-safe.
class TokenBucket {
public:
    TokenBucket(double capacity, double rate, Clock clock = {}, Sleeper sleep = {});
    void acquire();
    double available();

private:
    void refill();
    double capacity_;
    double rate_;
    double tokens_;
    Clock clock_;
    Sleeper sleep_;
    std::chrono::steady_clock::time_point last_;
    std::mutex mutex_;
};

struct GitHubConfig {
    std::string base_url = "https://api.github.com";
    std::string token;  // empty for anonymous access
    int max_retries = 5;
    std::chrono::milliseconds initial_backoff{1000};
    std::chrono::milliseconds max_backoff{60000};
    double requests_per_second = 1.0;
    double burst = 10.0;
    bool extended_extensions = false;  // which files get their contents fetched
    Sleeper sleep;                     // defaults to std::this_thread::sleep_for
    Clock clock;                       // defaults to steady_clock::now
};

// Name of the environment variable holding the API token.
inline constexpr const char* kTokenEnvVar = "ADHOC_GITHUB_TOKEN";

class GitHubClient : public RemoteClient {
public:
    explicit GitHubClient(GitHubConfig config);
    ~GitHubClient() override;
    CommitDetail fetch_commit_detail(const std::string& repo_full_name, const std::string& sha) override;
    RepoMetadata fetch_repo_metadata(const std::string& repo_full_name) override;

    struct Response {
        int status = 0;
        std::string body;
        std::multimap<std::string, std::string> headers;
    };
    // GET with rate limiting, backoff and bounded retries.
    Response get(const std::string& path, const std::string& accept = "application/vnd.github+json");

private:
    struct Impl;
    GitHubConfig config_;
    std::unique_ptr<Impl> impl_;
};

// Reads commits from a local clone with the git executable.
class LocalGitClient : public RemoteClient {
public:
    explicit LocalGitClient(std::filesystem::path repo_dir, std::string repo_full_name = {})
        : dir_(std::move(repo_dir)), name_(std::move(repo_full_name)) {}
    CommitDetail fetch_commit_detail(const std::string& repo_full_name, const std::string& sha) override;
    RepoMetadata fetch_repo_metadata(const std::string& repo_full_name) override;

    struct LogEntry {
        std::string sha;
        std::string message;
        std::string commit_time;  // ISO-8601 UTC
    };
    // Oldest first.
    std::vector<LogEntry> log() const;

private:
    std::string git(const std::vector<std::string>& args, bool allow_failure = false, bool* ok = nullptr) const;
    std::filesystem::path dir_;
    std::string name_;
};

}  // namespace adhoc::remote
