#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace adhoc {

using Timestamp = std::chrono::sys_seconds;

// Accepts "YYYY-MM-DDTHH:MM:SSZ", fractional seconds, numeric offsets
// ("+02:00", "-0500") and the space-separated "YYYY-MM-DD HH:MM:SS UTC" form
// used by warehouse exports. A bare date is midnight UTC.
std::optional<Timestamp> parse_timestamp(std::string_view text);

// "YYYY-MM-DDTHH:MM:SSZ"
std::string format_timestamp(Timestamp t);

// "YYYY-MM"
std::string format_month(Timestamp t);

}  // namespace adhoc
