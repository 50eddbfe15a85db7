#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace adhoc::diff {

enum class Exclusion { none, minified, library, non_target_extension, oversized };

std::string_view exclusion_name(Exclusion e);

struct LineSets {
    std::set<int> deleted;  // 1-based, before coordinates
    std::set<int> added;    // 1-based, after coordinates
    bool operator==(const LineSets&) const = default;
};

struct FileDiff {
    std::string path;
    std::string before_content;
    std::string after_content;
    std::set<int> deleted_lines;
    std::set<int> added_lines;
    Exclusion excluded = Exclusion::none;
};

struct TargetOptions {
    bool extended_extensions = false;
};

class DiffParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMinifiedPrefixChars = 5000;
inline constexpr double kMinifiedWhitespaceRatio = 0.12;
inline constexpr double kMinifiedMeanLineLength = 500.0;
inline constexpr std::size_t kMaxFileBytes = 5u * 1024u * 1024u;

bool is_target_file(std::string_view path, const TargetOptions& options = {});
std::vector<std::string> filter_target_files(const std::vector<std::string>& paths,
                                             const TargetOptions& options = {});

struct MinifiedStats {
    std::size_t chars = 0;  // code points examined, at most kMinifiedPrefixChars
    double whitespace_ratio = 0.0;
    double mean_line_length = 0.0;
};

MinifiedStats minified_stats(std::string_view source);
bool detect_minified(std::string_view source);
bool detect_library(std::string_view path);

std::string normalize_line_endings(std::string_view text);
// "a\nb\n" and "a\nb" both give {"a", "b"}; "" gives {}.
std::vector<std::string_view> split_lines(std::string_view text);

LineSets compute_line_diff(std::string_view before, std::string_view after);

// GNU-style unified diff with `context` lines around each change. Headers
// are emitted only when both names are non-empty.
std::string render_unified_diff(std::string_view before, std::string_view after, int context = 3,
                                std::string_view old_name = {}, std::string_view new_name = {});

LineSets parse_unified_diff(std::string_view patch);

// Classifies the file and, when it is analyzable, fills the line sets from
// full contents.
FileDiff make_file_diff(std::string path, std::string before, std::string after,
                        const TargetOptions& options = {});

// Same classification, line sets taken from patch text instead.
FileDiff make_file_diff_from_patch(std::string path, std::string before, std::string_view patch,
                                   const TargetOptions& options = {});

}  // namespace adhoc::diff
