#include <doctest.h>

#include <httplib.h>

#include "adhoc/diff.hpp"
#include "adhoc/process.hpp"
#include "adhoc/remote.hpp"

#include <atomic>
#include <fstream>
#include <thread>

using namespace adhoc;
using namespace adhoc::remote;

namespace {

const std::filesystem::path kStore = std::filesystem::path(ADHOC_FIXTURES) / "store";
const std::string kSha1(40, '1');

std::filesystem::path temp_dir(const std::string& name) {
    const auto p = std::filesystem::temp_directory_path() / ("adhoc_test_" + name + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

// Local HTTP server on an ephemeral port, stopped on destruction.
struct TestServer {
    httplib::Server server;
    int port = 0;
    std::thread thread;
    void start() {
        port = server.bind_to_any_port("127.0.0.1");
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }
    ~TestServer() {
        server.stop();
        if (thread.joinable()) thread.join();
    }
};

}  // namespace

TEST_CASE("FixtureClient replays a recorded commit") {
    FixtureClient client(kStore);
    const CommitDetail d = client.fetch_commit_detail("acme/widgets", kSha1);
    REQUIRE(d.files.size() == 3);
    CHECK(d.files[0].path == "README.md");
    CHECK(d.parents == std::vector<std::string>{std::string(40, '0')});
    CHECK(d.author_time == "2024-08-14T09:30:00Z");
    CHECK(d.message == "Remove console.log calls");

    // Hand count on the recorded patches: 3 + 2 deleted lines in target files.
    std::size_t deleted = 0;
    for (const ChangedFile& f : d.files) {
        if (!diff::is_target_file(f.path)) continue;
        REQUIRE(f.patch.has_value());
        deleted += diff::parse_unified_diff(*f.patch).deleted.size();
        CHECK(diff::parse_unified_diff(*f.patch) == diff::compute_line_diff(*f.before_content, *f.after_content));
    }
    CHECK(deleted == 5);
}

TEST_CASE("FixtureClient misses and corrupt responses") {
    FixtureClient client(kStore);
    CHECK_THROWS_AS(client.fetch_commit_detail("acme/widgets", std::string(40, '9')), UnavailableError);
    CHECK_THROWS_AS(client.fetch_commit_detail("ghost/repo", kSha1), UnavailableError);
    try {
        client.fetch_commit_detail("acme/widgets", std::string(40, '2'));
        FAIL("expected RemoteError");
    } catch (const UnavailableError&) {
        FAIL("corrupt response must not read as unavailable");
    } catch (const RemoteError& e) {
        CHECK(std::string(e.what()).find("corrupt") != std::string::npos);
    }
    const RepoMetadata m = client.fetch_repo_metadata("acme/widgets");
    CHECK(m.stars == 120);
    CHECK(m.contributors == 4);
    CHECK(format_timestamp(m.last_updated) == "2024-06-01T12:00:00Z");
}

TEST_CASE("RecordingClient writes responses that replay identically") {
    const auto root = temp_dir("record");
    FixtureClient source(kStore);
    RecordingClient recorder(source, root);
    const CommitDetail original = recorder.fetch_commit_detail("acme/widgets", kSha1);
    const RepoMetadata repo = recorder.fetch_repo_metadata("acme/widgets");
    CHECK(std::filesystem::exists(root / "acme__widgets" / (kSha1 + ".json")));
    FixtureClient replay(root);
    CHECK(replay.fetch_commit_detail("acme/widgets", kSha1) == original);
    CHECK(repo_to_json(replay.fetch_repo_metadata("acme/widgets")) == repo_to_json(repo));
    std::filesystem::remove_all(root);
}

TEST_CASE("TokenBucket refills at the configured rate") {
    auto now = std::chrono::steady_clock::time_point{};
    std::vector<std::chrono::milliseconds> sleeps;
    TokenBucket bucket(
        2, 4.0, [&] { return now; },
        [&](std::chrono::milliseconds d) {
            sleeps.push_back(d);
            now += d;
        });
    bucket.acquire();
    bucket.acquire();
    CHECK(sleeps.empty());
    bucket.acquire();
    REQUIRE(sleeps.size() == 1);
    CHECK(sleeps[0] == std::chrono::milliseconds(250));
    now += std::chrono::seconds(10);
    CHECK(bucket.available() == doctest::Approx(2.0));
}

TEST_CASE("GitHubClient retries rate-limited requests with exponential backoff") {
    TestServer srv;
    std::atomic<int> commit_calls{0};
    const std::string before = "console.log(1);\nlet a;\n";
    const std::string after = "let a;\n";
    srv.server.Get(R"(/repos/acme/widgets/commits/(\w+))", [&](const httplib::Request& req, httplib::Response& res) {
        CHECK(req.get_header_value("Authorization") == "Bearer secret");
        if (commit_calls++ < 2) {
            res.status = 403;
            res.set_header("X-RateLimit-Remaining", "0");
            res.set_content("{}", "application/json");
            return;
        }
        nlohmann::json body = {{"sha", req.matches[1].str()},
                               {"commit", {{"message", "remove console.log"}, {"author", {{"date", "2024-08-01T10:00:00+02:00"}}}}},
                               {"parents", {{{"sha", std::string(40, 'p')}}}},
                               {"files", {{{"filename", "src/a.js"}, {"status", "modified"}, {"patch", "@@ -1,2 +1 @@\n-console.log(1);\n let a;\n"}},
                                          {{"filename", "docs/x.md"}, {"status", "added"}}}}};
        res.set_content(body.dump(), "application/json");
    });
    srv.server.Get(R"(/repos/acme/widgets/contents/src/a\.js)", [&](const httplib::Request& req, httplib::Response& res) {
        CHECK(req.get_header_value("Accept") == "application/vnd.github.raw+json");
        res.set_content(req.get_param_value("ref") == std::string(40, 'p') ? before : after, "text/plain");
    });
    srv.server.Get("/repos/gone/away/commits/(\\w+)", [](const httplib::Request&, httplib::Response& res) { res.status = 404; });
    srv.server.Get("/repos/busy/repo/commits/(\\w+)", [](const httplib::Request&, httplib::Response& res) {
        res.status = 429;
        res.set_header("Retry-After", "7");
    });
    srv.server.Get("/repos/acme/widgets", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(R"({"full_name":"acme/widgets","stargazers_count":5,"forks_count":1,"watchers_count":5,"size":10,"updated_at":"2024-01-02T03:04:05Z","description":null})",
                        "application/json");
    });
    srv.server.Get("/repos/acme/widgets/contributors", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Link", "<https://x/repositories/1/contributors?per_page=1&anon=true&page=2>; rel=\"next\", "
                               "<https://x/repositories/1/contributors?per_page=1&anon=true&page=37>; rel=\"last\"");
        res.set_content("[{}]", "application/json");
    });
    srv.start();

    std::vector<std::chrono::milliseconds> sleeps;
    GitHubConfig config;
    config.base_url = "http://127.0.0.1:" + std::to_string(srv.port);
    config.token = "secret";
    config.max_retries = 3;
    config.initial_backoff = std::chrono::milliseconds(100);
    config.requests_per_second = 1000;
    config.burst = 100;
    config.sleep = [&](std::chrono::milliseconds d) { sleeps.push_back(d); };
    GitHubClient client(config);

    const CommitDetail d = client.fetch_commit_detail("acme/widgets", std::string(40, 'c'));
    CHECK(commit_calls == 3);
    REQUIRE(sleeps.size() >= 2);
    CHECK(sleeps[0] == std::chrono::milliseconds(100));
    CHECK(sleeps[1] == std::chrono::milliseconds(200));
    CHECK(d.author_time == "2024-08-01T08:00:00Z");
    REQUIRE(d.files.size() == 2);
    CHECK(d.files[0].before_content == before);
    CHECK(d.files[0].after_content == after);
    CHECK_FALSE(d.files[1].before_content.has_value());

    CHECK_THROWS_AS(client.fetch_commit_detail("gone/away", std::string(40, 'c')), UnavailableError);
    sleeps.clear();
    try {
        client.fetch_commit_detail("busy/repo", std::string(40, 'c'));
        FAIL("expected RateLimitError");
    } catch (const RateLimitError& e) {
        CHECK(e.wait_hint() == std::chrono::seconds(7));
    }
    CHECK(sleeps.size() == 3);

    const RepoMetadata m = client.fetch_repo_metadata("acme/widgets");
    CHECK(m.contributors == 37);
    CHECK(m.stars == 5);
    CHECK(m.description.empty());
}

TEST_CASE("LocalGitClient reads commits from a repository") {
    const auto dir = temp_dir("git");
    auto git = [&](std::vector<std::string> args) {
        std::vector<std::string> argv = {"git", "-C", dir.string(), "-c", "user.name=T", "-c", "user.email=t@example.com",
                                         "-c", "commit.gpgsign=false"};
        argv.insert(argv.end(), args.begin(), args.end());
        const ProcessResult r = run_process(argv);
        REQUIRE_MESSAGE(r.exit_code == 0, r.err);
        return r.out;
    };
    git({"init", "-q"});
    std::filesystem::create_directories(dir / "src");
    std::ofstream(dir / "src" / "a.js") << "console.log(1);\nlet a;\n";
    std::ofstream(dir / "notes.txt") << "n\n";
    git({"add", "."});
    git({"commit", "-q", "-m", "init", "--date", "2024-01-01T00:00:00Z"});
    std::ofstream(dir / "src" / "a.js") << "let a;\n";
    std::filesystem::remove(dir / "notes.txt");
    git({"add", "-A"});
    git({"commit", "-q", "-m", "remove console.log\n\nbody", "--date", "2024-01-02T00:00:00+01:00"});

    LocalGitClient client(dir, "local/repo");
    const auto log = client.log();
    REQUIRE(log.size() == 2);
    CHECK(log[1].message == "remove console.log\n\nbody");
    const CommitDetail d = client.fetch_commit_detail("local/repo", log[1].sha);
    CHECK(d.parents == std::vector<std::string>{log[0].sha});
    CHECK(d.author_time == "2024-01-01T23:00:00Z");
    REQUIRE(d.files.size() == 2);
    CHECK(d.files[0].path == "notes.txt");
    CHECK(d.files[0].status == "removed");
    CHECK(d.files[1].before_content == "console.log(1);\nlet a;\n");
    CHECK(d.files[1].after_content == "let a;\n");
    CHECK_THROWS_AS(client.fetch_commit_detail("local/repo", std::string(40, 'e')), UnavailableError);
    const CommitDetail root = client.fetch_commit_detail("local/repo", log[0].sha);
    CHECK(root.parents.empty());
    CHECK(root.files.size() == 2);
    std::filesystem::remove_all(dir);
}
