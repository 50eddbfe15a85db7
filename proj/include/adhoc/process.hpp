#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace adhoc {

struct ProcessResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Runs argv[0] from PATH without a shell. Throws std::runtime_error when the
// process cannot be started.
ProcessResult run_process(const std::vector<std::string>& argv, const std::filesystem::path& cwd = {});

}  // namespace adhoc
