#include <doctest.h>

#include "adhoc/context.hpp"
#include "adhoc/js/parser.hpp"
#include "adhoc/semantics.hpp"

#include <fstream>
#include <random>
#include <regex>
#include <sstream>

using namespace adhoc;
using namespace adhoc::semantics;

namespace {

std::string read_fixture(const std::string& rel) {
    std::ifstream in(std::string(ADHOC_FIXTURES) + "/" + rel, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Independent run-length reference built on a back-referencing regex.
std::string regex_normalize(const std::string& s) {
    static const std::regex digits("[0-9]*\\.?[0-9]*");
    if (std::regex_match(s, digits) && s.find_first_of("0123456789") != std::string::npos) return "<NUM>";
    static const std::regex run("(.)\\1{3,}");
    return std::regex_replace(s, run, "$1R");
}

int longest_run(const std::string& s) {
    int best = 0;
    for (std::size_t i = 0; i < s.size();) {
        std::size_t j = i;
        while (j < s.size() && s[j] == s[i]) ++j;
        best = std::max(best, static_cast<int>(j - i));
        i = j;
    }
    return best;
}

}  // namespace

TEST_CASE("profile_arguments kinds and counts") {
    const ArgumentProfile p = profile_log_text("console.log('Results: ', results)");
    CHECK(p.arg_count == 2);
    CHECK(p.kinds == std::vector<ArgKind>{ArgKind::literal, ArgKind::identifier});
    CHECK(p.rendered == std::vector<std::string>{"'Results: '", "results"});
    CHECK(p.has_literal);
    CHECK(p.label_names_other);

    const ArgumentProfile empty = profile_log_text("console.log()");
    CHECK(empty.arg_count == 0);
    CHECK_FALSE(empty.has_literal);

    const ArgumentProfile json = profile_log_text("console.log(JSON.stringify(obj))");
    CHECK(json.kinds == std::vector<ArgKind>{ArgKind::call});
    CHECK(json.embedded_callee_names == std::vector<std::string>{"JSON.stringify"});

    const ArgumentProfile tpl = profile_log_text("console.log(`user=${u.name}`, this.state.x, 3, f)");
    CHECK(tpl.kinds ==
          std::vector<ArgKind>{ArgKind::template_literal, ArgKind::member, ArgKind::literal, ArgKind::identifier});
    CHECK(tpl.rendered[0] == "`user=${u.name}`");
    CHECK(tpl.names[1] == "x");
    CHECK(tpl.has_literal);
    CHECK_FALSE(tpl.label_names_other);

    const ArgumentProfile num = profile_log_text("console.log(42)");
    CHECK_FALSE(num.has_literal);
    CHECK(num.has_any_literal);
}

TEST_CASE("profile_log_text accepts TypeScript-only syntax") {
    const ArgumentProfile p = profile_log_text("console.log(<any>x, y as string)");
    CHECK(p.arg_count == 2);
}

TEST_CASE("profile arg_count equals the AST argument count on fixtures") {
    for (const char* name : {"parser/sample.js", "context/five_logs.js", "context/area.js"}) {
        auto ast = js::parse_program(read_fixture(name));
        js::walk(static_cast<const js::Node*>(ast->root()), [&](const js::Node* n) {
            if (n->is(js::NodeKind::CallExpression)) {
                const ArgumentProfile p = profile_arguments(*ast, n);
                CHECK(p.arg_count == static_cast<int>(n->children(js::Role::Arguments).size()));
                CHECK(p.kinds.size() == p.rendered.size());
                CHECK(p.rendered.size() == static_cast<std::size_t>(p.arg_count));
                if (p.label_names_other) CHECK((p.arg_count >= 2 && p.has_literal));
            }
            return true;
        });
    }
}

TEST_CASE("detect_label") {
    CHECK(detect_label(profile_log_text("console.log('Results: ', results)")));
    CHECK_FALSE(detect_label(profile_log_text("console.log('>>>', x)")));
    CHECK(detect_label(profile_log_text("console.log(`user=${u}`, user)")));
    CHECK(detect_label(profile_log_text("console.log('value of props.count', this.props.count)")));
    CHECK_FALSE(detect_label(profile_log_text("console.log('a', 'a')")));
    CHECK_FALSE(detect_label(profile_log_text("console.log(123, x)")));
    CHECK_THROWS_AS(detect_label(profile_log_text("console.log(x)")), ArgumentError);
    CHECK_THROWS_AS(detect_label(profile_log_text("console.log('a', b, c)")), ArgumentError);

    LabelOptions wb;
    wb.word_boundary = true;
    CHECK(detect_label(profile_log_text("console.log('Results: ', results)"), wb));
    CHECK_FALSE(detect_label(profile_log_text("console.log('idx', id)"), wb));
    CHECK(detect_label(profile_log_text("console.log('idx', id)")));
}

TEST_CASE("detect_label is symmetric in argument order") {
    const std::vector<std::pair<std::string, std::string>> pairs = {
        {"'Results: '", "results"}, {"'>>>'", "x"},        {"`user=${u}`", "user"},
        {"'count'", "a.count"},     {"'n'", "f(n)"},        {"'zz'", "'zz'"},
        {"'ID:'", "id"},            {"`${a}`", "b.a"},      {"1", "x"},
    };
    for (const auto& [a, b] : pairs) {
        CAPTURE(a);
        CAPTURE(b);
        const bool ab = detect_label(profile_log_text("console.log(" + a + ", " + b + ")"));
        const bool ba = detect_label(profile_log_text("console.log(" + b + ", " + a + ")"));
        CHECK(ab == ba);
    }
}

TEST_CASE("normalize_literal examples") {
    CHECK(normalize_literal("-----") == "-R");
    CHECK(normalize_literal("abc") == "abc");
    CHECK(normalize_literal("==a=====b") == "==a=Rb");
    CHECK(normalize_literal("===") == "===");
    CHECK(normalize_literal("====") == "=R");
    CHECK(normalize_literal("42") == "<NUM>");
    CHECK(normalize_literal("3.14") == "<NUM>");
    CHECK(normalize_literal("1.2.3") == "1.2.3");
    CHECK(normalize_literal("") == "");
    CHECK(normalize_literal("\xC3\xA9\xC3\xA9\xC3\xA9\xC3\xA9") == "\xC3\xA9R");
}

TEST_CASE("normalize_literal properties over random strings") {
    std::mt19937 rng(1103);
    const std::string alphabet = "ab=-* .1";
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::uniform_int_distribution<int> len(0, 30);
    std::uniform_int_distribution<int> burst(1, 8);
    for (int trial = 0; trial < 10000; ++trial) {
        std::string s;
        const int n = len(rng);
        while (static_cast<int>(s.size()) < n) s.append(burst(rng), alphabet[pick(rng)]);
        CAPTURE(s);
        const std::string out = normalize_literal(s);
        CHECK(out == regex_normalize(s));
        if (out == "<NUM>") continue;
        CHECK(longest_run(out) <= 3);
        CHECK(out.size() <= s.size());
        CHECK(normalize_literal(out) == out);
    }
}

TEST_CASE("embedded_calls") {
    CHECK(profile_log_text("console.log(JSON.stringify(o))").embedded_callee_names ==
          std::vector<std::string>{"JSON.stringify"});
    CHECK(profile_log_text("console.log(a + b)").embedded_callee_names.empty());
    CHECK(profile_log_text("console.log(fmt(x), g(h(y)))").embedded_callee_names ==
          std::vector<std::string>{"fmt", "g", "h"});
    CHECK(profile_log_text("console.log(this.fmt(x), `${a.b.c()}`)").embedded_callee_names ==
          std::vector<std::string>{"this.fmt", "a.b.c"});
}
