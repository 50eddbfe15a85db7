#pragma once

#include "adhoc/time.hpp"

#include <cstdint>
#include <string>

namespace adhoc {

inline constexpr int kActiveWindowDays = 183;

struct RepoMetadata {
    std::string full_name;
    std::string description;
    std::int64_t contributors = 0;
    std::int64_t stars = 0;
    std::int64_t forks_count = 0;
    std::int64_t watchers_count = 0;
    std::int64_t size_kb = 0;
    Timestamp last_updated{};
    bool is_active = false;
};

// Throws ArgumentError when query_date precedes last_updated.
bool is_active(Timestamp last_updated, Timestamp query_date);

}  // namespace adhoc
