#include "adhoc/diff.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <unordered_map>

namespace adhoc::diff {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::string_view basename(std::string_view path) {
    const auto slash = path.find_last_of("/\\");
    return slash == std::string_view::npos ? path : path.substr(slash + 1);
}

// Linear-space Myers diff over interned line ids. Marks deleted lines of a
// and inserted lines of b.
class Myers {
public:
    Myers(const std::vector<int>& a, const std::vector<int>& b)
        : a_(a), b_(b), deleted_(a.size(), false), inserted_(b.size(), false) {}

    void run() { compare(0, static_cast<int>(a_.size()), 0, static_cast<int>(b_.size())); }

    const std::vector<bool>& deleted() const { return deleted_; }
    const std::vector<bool>& inserted() const { return inserted_; }

private:
    void compare(int a0, int a1, int b0, int b1) {
        while (a0 < a1 && b0 < b1 && a_[a0] == b_[b0]) {
            ++a0;
            ++b0;
        }
        while (a0 < a1 && b0 < b1 && a_[a1 - 1] == b_[b1 - 1]) {
            --a1;
            --b1;
        }
        if (a0 == a1) {
            for (int j = b0; j < b1; ++j) inserted_[j] = true;
            return;
        }
        if (b0 == b1) {
            for (int i = a0; i < a1; ++i) deleted_[i] = true;
            return;
        }
        int x = 0;
        int y = 0;
        if (!middle_snake(a0, a1, b0, b1, x, y)) {
            for (int i = a0; i < a1; ++i) deleted_[i] = true;
            for (int j = b0; j < b1; ++j) inserted_[j] = true;
            return;
        }
        compare(a0, a0 + x, b0, b0 + y);
        compare(a0 + x, a1, b0 + y, b1);
    }

    // Finds a split point (x, y), relative to (a0, b0), on a shortest edit
    // path by running the forward and reverse searches until they overlap.
    bool middle_snake(int a0, int a1, int b0, int b1, int& split_x, int& split_y) {
        const int n = a1 - a0;
        const int m = b1 - b0;
        const int max_d = (n + m + 1) / 2;
        const int offset = max_d;
        const int length = 2 * max_d + 2;
        std::vector<int> v1(length, -1);
        std::vector<int> v2(length, -1);
        v1[offset + 1] = 0;
        v2[offset + 1] = 0;
        const int delta = n - m;
        const bool front = (delta % 2) != 0;
        int k1start = 0, k1end = 0, k2start = 0, k2end = 0;
        for (int d = 0; d < max_d; ++d) {
            for (int k1 = -d + k1start; k1 <= d - k1end; k1 += 2) {
                const int k1o = offset + k1;
                int x1 = (k1 == -d || (k1 != d && v1[k1o - 1] < v1[k1o + 1])) ? v1[k1o + 1] : v1[k1o - 1] + 1;
                int y1 = x1 - k1;
                while (x1 < n && y1 < m && a_[a0 + x1] == b_[b0 + y1]) {
                    ++x1;
                    ++y1;
                }
                v1[k1o] = x1;
                if (x1 > n) {
                    k1end += 2;
                } else if (y1 > m) {
                    k1start += 2;
                } else if (front) {
                    const int k2o = offset + delta - k1;
                    if (k2o >= 0 && k2o < length && v2[k2o] != -1) {
                        const int x2 = n - v2[k2o];
                        if (x1 >= x2) {
                            split_x = x1;
                            split_y = y1;
                            return true;
                        }
                    }
                }
            }
            for (int k2 = -d + k2start; k2 <= d - k2end; k2 += 2) {
                const int k2o = offset + k2;
                int x2 = (k2 == -d || (k2 != d && v2[k2o - 1] < v2[k2o + 1])) ? v2[k2o + 1] : v2[k2o - 1] + 1;
                int y2 = x2 - k2;
                while (x2 < n && y2 < m && a_[a0 + n - x2 - 1] == b_[b0 + m - y2 - 1]) {
                    ++x2;
                    ++y2;
                }
                v2[k2o] = x2;
                if (x2 > n) {
                    k2end += 2;
                } else if (y2 > m) {
                    k2start += 2;
                } else if (!front) {
                    const int k1o = offset + delta - k2;
                    if (k1o >= 0 && k1o < length && v1[k1o] != -1) {
                        const int x1 = v1[k1o];
                        const int y1 = offset + x1 - k1o;
                        if (x1 >= n - x2) {
                            split_x = x1;
                            split_y = y1;
                            return true;
                        }
                    }
                }
            }
        }
        return false;
    }

    const std::vector<int>& a_;
    const std::vector<int>& b_;
    std::vector<bool> deleted_;
    std::vector<bool> inserted_;
};

struct Script {
    std::vector<std::string_view> a;
    std::vector<std::string_view> b;
    std::vector<bool> deleted;
    std::vector<bool> inserted;
};

Script diff_script(std::string_view before, std::string_view after) {
    Script s;
    s.a = split_lines(before);
    s.b = split_lines(after);
    std::unordered_map<std::string_view, int> ids;
    auto intern = [&](const std::vector<std::string_view>& lines) {
        std::vector<int> out;
        out.reserve(lines.size());
        for (std::string_view l : lines) out.push_back(ids.emplace(l, static_cast<int>(ids.size())).first->second);
        return out;
    };
    const std::vector<int> a = intern(s.a);
    const std::vector<int> b = intern(s.b);
    Myers myers(a, b);
    myers.run();
    s.deleted = myers.deleted();
    s.inserted = myers.inserted();
    return s;
}

bool parse_int(std::string_view s, int& out) {
    if (s.empty()) return false;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && out >= 0;
}

bool parse_range(std::string_view text, char sign, int& start, int& count) {
    if (text.empty() || text.front() != sign) return false;
    text.remove_prefix(1);
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) {
        count = 1;
        return parse_int(text, start);
    }
    return parse_int(text.substr(0, comma), start) && parse_int(text.substr(comma + 1), count);
}

std::string range_text(int start, int count) {
    // GNU convention: an empty range names the line before it; a single
    // line omits the count.
    if (count == 0) return std::to_string(start) + ",0";
    if (count == 1) return std::to_string(start);
    return std::to_string(start) + "," + std::to_string(count);
}

}  // namespace

std::string_view exclusion_name(Exclusion e) {
    switch (e) {
        case Exclusion::none: return "none";
        case Exclusion::minified: return "minified";
        case Exclusion::library: return "library";
        case Exclusion::non_target_extension: return "non-target-extension";
        case Exclusion::oversized: return "oversized";
    }
    return "none";
}

bool is_target_file(std::string_view path, const TargetOptions& options) {
    const std::string name = lower(basename(path));
    static constexpr std::array<std::string_view, 2> kDefault = {".js", ".ts"};
    static constexpr std::array<std::string_view, 4> kExtended = {".jsx", ".tsx", ".mjs", ".cjs"};
    for (std::string_view ext : kDefault) {
        if (ends_with(name, ext) && name.size() > ext.size()) return true;
    }
    if (options.extended_extensions) {
        for (std::string_view ext : kExtended) {
            if (ends_with(name, ext) && name.size() > ext.size()) return true;
        }
    }
    return false;
}

std::vector<std::string> filter_target_files(const std::vector<std::string>& paths, const TargetOptions& options) {
    std::vector<std::string> out;
    for (const std::string& p : paths) {
        if (is_target_file(p, options)) out.push_back(p);
    }
    return out;
}

MinifiedStats minified_stats(std::string_view source) {
    MinifiedStats st;
    std::size_t whitespace = 0;
    std::size_t breaks = 0;
    bool last_was_break = false;
    for (std::size_t i = 0; i < source.size() && st.chars < kMinifiedPrefixChars; ++i) {
        const auto c = static_cast<unsigned char>(source[i]);
        if ((c & 0xC0) == 0x80) continue;  // UTF-8 continuation byte
        ++st.chars;
        last_was_break = c == '\n';
        if (last_was_break) ++breaks;
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') ++whitespace;
    }
    if (st.chars == 0) return st;
    st.whitespace_ratio = static_cast<double>(whitespace) / static_cast<double>(st.chars);
    const std::size_t lines = std::max<std::size_t>(breaks + (last_was_break ? 0 : 1), 1);
    st.mean_line_length = static_cast<double>(st.chars - breaks) / static_cast<double>(lines);
    return st;
}

bool detect_minified(std::string_view source) {
    const MinifiedStats st = minified_stats(source);
    if (st.chars == 0) return false;
    return st.whitespace_ratio < kMinifiedWhitespaceRatio || st.mean_line_length > kMinifiedMeanLineLength;
}

bool detect_library(std::string_view path) {
    static constexpr std::array<std::string_view, 5> kSegments = {"node_modules", "vendor", "dist", "build",
                                                                  "bower_components"};
    std::size_t start = 0;
    while (start <= path.size()) {
        std::size_t end = path.find_first_of("/\\", start);
        if (end == std::string_view::npos) end = path.size();
        const std::string_view segment = path.substr(start, end - start);
        if (end < path.size()) {  // directory segment
            for (std::string_view lib : kSegments) {
                if (segment == lib) return true;
            }
        }
        start = end + 1;
    }
    const std::string name = lower(basename(path));
    return ends_with(name, ".min.js") || ends_with(name, ".min.ts");
}

std::string normalize_line_endings(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\r') {
            out.push_back('\n');
            if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        } else {
            out.push_back(text[i]);
        }
    }
    return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        const std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

LineSets compute_line_diff(std::string_view before, std::string_view after) {
    const Script s = diff_script(before, after);
    LineSets out;
    for (std::size_t i = 0; i < s.deleted.size(); ++i) {
        if (s.deleted[i]) out.deleted.insert(static_cast<int>(i) + 1);
    }
    for (std::size_t j = 0; j < s.inserted.size(); ++j) {
        if (s.inserted[j]) out.added.insert(static_cast<int>(j) + 1);
    }
    return out;
}

std::string render_unified_diff(std::string_view before, std::string_view after, int context,
                                std::string_view old_name, std::string_view new_name) {
    const Script s = diff_script(before, after);
    const bool a_eol = before.empty() || before.back() == '\n';
    const bool b_eol = after.empty() || after.back() == '\n';

    // Flatten into an ordered edit list: deletions before insertions at each
    // divergence point.
    struct Op {
        char kind;
        int ai;
        int bi;
    };
    std::vector<Op> ops;
    const int na = static_cast<int>(s.a.size());
    const int nb = static_cast<int>(s.b.size());
    int i = 0, j = 0;
    while (i < na || j < nb) {
        if (i < na && s.deleted[i]) {
            ops.push_back({'-', i++, j});
        } else if (j < nb && s.inserted[j]) {
            ops.push_back({'+', i, j++});
        } else {
            ops.push_back({' ', i++, j++});
        }
    }

    std::string out;
    if (!old_name.empty() && !new_name.empty()) {
        out += "--- ";
        out += old_name;
        out += "\n+++ ";
        out += new_name;
        out += "\n";
    }
    const int total = static_cast<int>(ops.size());
    int k = 0;
    while (k < total) {
        while (k < total && ops[k].kind == ' ') ++k;
        if (k == total) break;
        const int first = std::max(0, k - context);
        int last = k;  // last change included
        int scan = k;
        while (scan < total) {
            if (ops[scan].kind != ' ') {
                last = scan;
                ++scan;
                continue;
            }
            int run = scan;
            while (run < total && ops[run].kind == ' ') ++run;
            if (run < total && run - scan <= 2 * context) {
                scan = run;
                continue;
            }
            break;
        }
        const int end = std::min(total, last + 1 + context);
        int a_start = ops[first].ai, b_start = ops[first].bi;
        int a_count = 0, b_count = 0;
        for (int q = first; q < end; ++q) {
            if (ops[q].kind != '+') ++a_count;
            if (ops[q].kind != '-') ++b_count;
        }
        out += "@@ -" + range_text(a_count == 0 ? a_start : a_start + 1, a_count) + " +" +
               range_text(b_count == 0 ? b_start : b_start + 1, b_count) + " @@\n";
        for (int q = first; q < end; ++q) {
            const Op& op = ops[q];
            const std::string_view text = op.kind == '+' ? s.b[op.bi] : s.a[op.ai];
            out.push_back(op.kind);
            out.append(text);
            out.push_back('\n');
            const bool a_last = op.kind != '+' && op.ai == na - 1 && !a_eol;
            const bool b_last = op.kind != '-' && op.bi == nb - 1 && !b_eol;
            if (a_last || b_last) out += "\\ No newline at end of file\n";
        }
        k = end;
    }
    return out;
}

LineSets parse_unified_diff(std::string_view patch) {
    LineSets out;
    const std::vector<std::string_view> lines = split_lines(patch);
    std::size_t idx = 0;
    int hunk_number = 0;
    while (idx < lines.size()) {
        std::string_view line = lines[idx];
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.rfind("@@", 0) != 0) {
            ++idx;  // file headers and other preamble
            continue;
        }
        ++hunk_number;
        const std::string label = "hunk " + std::to_string(hunk_number) + " '" + std::string(line) + "'";
        const auto close = line.find("@@", 2);
        if (close == std::string_view::npos) throw DiffParseError("malformed header in " + label);
        std::string_view ranges = line.substr(2, close - 2);
        while (!ranges.empty() && ranges.front() == ' ') ranges.remove_prefix(1);
        while (!ranges.empty() && ranges.back() == ' ') ranges.remove_suffix(1);
        const auto space = ranges.find(' ');
        if (space == std::string_view::npos) throw DiffParseError("malformed header in " + label);
        int old_start = 0, old_count = 0, new_start = 0, new_count = 0;
        if (!parse_range(ranges.substr(0, space), '-', old_start, old_count) ||
            !parse_range(ranges.substr(space + 1), '+', new_start, new_count)) {
            throw DiffParseError("malformed range in " + label);
        }
        int old_line = old_count == 0 ? old_start + 1 : old_start;
        int new_line = new_count == 0 ? new_start + 1 : new_start;
        int old_left = old_count;
        int new_left = new_count;
        ++idx;
        while (old_left > 0 || new_left > 0) {
            if (idx >= lines.size()) throw DiffParseError("unexpected end of patch in " + label);
            std::string_view body = lines[idx];
            if (!body.empty() && body.back() == '\r') body.remove_suffix(1);
            const char kind = body.empty() ? ' ' : body.front();
            if (kind == '\\') {
                ++idx;
                continue;
            }
            if (kind == '-') {
                if (old_left == 0) throw DiffParseError("too many removed lines in " + label);
                out.deleted.insert(old_line++);
                --old_left;
            } else if (kind == '+') {
                if (new_left == 0) throw DiffParseError("too many added lines in " + label);
                out.added.insert(new_line++);
                --new_left;
            } else if (kind == ' ') {
                if (old_left == 0 || new_left == 0) throw DiffParseError("line counts disagree in " + label);
                ++old_line;
                ++new_line;
                --old_left;
                --new_left;
            } else {
                throw DiffParseError("unexpected line in " + label);
            }
            ++idx;
        }
        while (idx < lines.size() && !lines[idx].empty() && lines[idx].front() == '\\') ++idx;
    }
    return out;
}

namespace {

Exclusion classify(std::string_view path, std::string_view before, const TargetOptions& options) {
    if (!is_target_file(path, options)) return Exclusion::non_target_extension;
    if (detect_library(path)) return Exclusion::library;
    if (before.size() > kMaxFileBytes) return Exclusion::oversized;
    if (detect_minified(before)) return Exclusion::minified;
    return Exclusion::none;
}

}  // namespace

FileDiff make_file_diff(std::string path, std::string before, std::string after, const TargetOptions& options) {
    FileDiff fd;
    fd.path = std::move(path);
    fd.before_content = normalize_line_endings(before);
    fd.after_content = normalize_line_endings(after);
    fd.excluded = classify(fd.path, fd.before_content, options);
    if (fd.excluded == Exclusion::none && fd.after_content.size() > kMaxFileBytes) fd.excluded = Exclusion::oversized;
    if (fd.excluded != Exclusion::none) return fd;
    LineSets sets = compute_line_diff(fd.before_content, fd.after_content);
    fd.deleted_lines = std::move(sets.deleted);
    fd.added_lines = std::move(sets.added);
    return fd;
}

FileDiff make_file_diff_from_patch(std::string path, std::string before, std::string_view patch,
                                   const TargetOptions& options) {
    FileDiff fd;
    fd.path = std::move(path);
    fd.before_content = normalize_line_endings(before);
    fd.excluded = classify(fd.path, fd.before_content, options);
    if (fd.excluded != Exclusion::none) return fd;
    LineSets sets = parse_unified_diff(patch);
    fd.deleted_lines = std::move(sets.deleted);
    fd.added_lines = std::move(sets.added);
    return fd;
}

}  // namespace adhoc::diff
