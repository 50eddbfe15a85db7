#include <doctest.h>

#include "adhoc/context.hpp"
#include "adhoc/js/parser.hpp"

#include <fstream>
#include <map>
#include <sstream>

using namespace adhoc;
using namespace adhoc::context;
using adhoc::js::NodeKind;

namespace {

std::string read_fixture(const std::string& rel) {
    std::ifstream in(std::string(ADHOC_FIXTURES) + "/" + rel, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Name of the first function in the program.
std::string first_function_name(const std::string& source) {
    auto ast = js::parse_program(source);
    const auto fns = find_functions(*ast);
    REQUIRE(!fns.empty());
    return name_function(fns.front());
}

const Node* first_function(const Ast& ast) {
    const auto fns = find_functions(ast);
    REQUIRE(!fns.empty());
    return fns.front();
}

const CommitInfo kCommit{"acme/widgets", "0123456789abcdef0123456789abcdef01234567", "2024-08-15T10:00:00Z",
                         std::nullopt};

}  // namespace

TEST_CASE("name_function on the four naming patterns") {
    CHECK(first_function_name("var cb = function () {};") == "cb");
    CHECK(first_function_name("fetch(x).then(() => {});") == "then");
    CHECK(first_function_name("cb = function () {};") == "cb");
    CHECK(first_function_name("class Text { getText = () => {}; }") == "getText");
}

TEST_CASE("name_function edge cases") {
    CHECK(first_function_name("function named() {}") == "named");
    CHECK(first_function_name("const f = function inner() {};") == "inner");
    CHECK(first_function_name("obj.handler = () => {};") == "handler");
    CHECK(first_function_name("a = b = function () {};") == "a");
    CHECK(first_function_name("const o = { run() {} };") == "run");
    CHECK(first_function_name("const o = { 'go': () => 1 };") == "go");
    CHECK(first_function_name("class A { #priv() {} }") == "#priv");
    CHECK(first_function_name("class A { [k]() {} }") == kAnonymousName);
    CHECK(first_function_name("(function () {})();") == kAnonymousName);
    CHECK(first_function_name("const g = (() => {});") == "g");
    CHECK(first_function_name("setTimeout(function () {}, 10);") == "setTimeout");
    CHECK(first_function_name("export default function () {}") == kAnonymousName);
}

TEST_CASE("function kinds on the sample fixture") {
    auto ast = js::parse_program(read_fixture("parser/sample.js"));
    std::map<NodeKind, int> counts;
    for (const Node* fn : find_functions(*ast)) ++counts[fn->kind];
    CHECK(counts[NodeKind::FunctionDeclaration] == 5);
    CHECK(counts[NodeKind::FunctionExpression] == 17);
    CHECK(counts[NodeKind::ArrowFunctionExpression] == 11);
}

TEST_CASE("cyclomatic complexity matches the reference AST count on the sample fixture") {
    // (start line, complexity) per function in source order, counted on the
    // typescript-estree tree of the same file.
    const std::vector<std::pair<int, int>> expected = {
        {5, 12},  {29, 1},  {30, 2},  {32, 1},  {50, 1},  {54, 1},  {57, 1},  {60, 1},  {63, 1},
        {66, 1},  {72, 1},  {79, 1},  {83, 1},  {88, 1},  {92, 1},  {95, 1},  {100, 1}, {103, 1},
        {106, 1}, {109, 1}, {115, 1}, {115, 1}, {119, 1}, {164, 1}, {165, 2}, {171, 1}, {175, 1},
        {179, 1}, {179, 1}, {179, 1}, {203, 1}, {206, 2}, {213, 1},
    };
    auto ast = js::parse_program(read_fixture("parser/sample.js"));
    auto fns = find_functions(*ast);
    std::stable_sort(fns.begin(), fns.end(), [](const Node* a, const Node* b) { return a->begin < b->begin; });
    REQUIRE(fns.size() == expected.size());
    for (std::size_t i = 0; i < fns.size(); ++i) {
        CAPTURE(i);
        CHECK(ast->start(*fns[i]).line == expected[i].first);
        CHECK(cyclomatic_complexity(fns[i]) == expected[i].second);
    }
}

TEST_CASE("cyclomatic complexity rules") {
    auto cc = [](const std::string& src, bool logical = true) {
        auto ast = js::parse_program(src);
        return cyclomatic_complexity(first_function(*ast), logical);
    };
    CHECK(cc("function f() {}") == 1);
    CHECK(cc("function f(a) { if (a) {} else if (!a) {} }") == 3);
    CHECK(cc("function f(a) { switch (a) { case 1: case 2: break; default: } }") == 3);
    CHECK(cc("function f(a, b) { return a && b || a ?? b; }") == 4);
    CHECK(cc("function f(a, b) { return a && b || a ?? b; }", false) == 1);
    CHECK(cc("function f(a) { return a ? 1 : 2; }") == 2);
    CHECK(cc("function f(a) { for (;;) {} for (x in a) {} for (x of a) {} while (a) {} do {} while (a); }") == 6);
    CHECK(cc("function f() { try {} catch (e) {} finally {} }") == 2);
    CHECK(cc("function f(a) { const g = () => { if (a) {} }; }") == 1);
}

TEST_CASE("classification flags cover all eight combinations") {
    struct Case {
        std::string src;
        bool is_async, is_callback, is_anonymous;
    };
    const std::vector<Case> cases = {
        {"function f() {}", false, false, false},
        {"const f = () => {};", false, false, true},
        {"run(function cb() {});", false, true, false},
        {"run(() => {});", false, true, true},
        {"async function f() {}", true, false, false},
        {"const f = async () => {};", true, false, true},
        {"run(async function cb() {});", true, true, false},
        {"run(async () => {});", true, true, true},
    };
    for (const Case& c : cases) {
        CAPTURE(c.src);
        auto ast = js::parse_program(c.src);
        const Classification k = classify_function(first_function(*ast));
        CHECK(k.is_async == c.is_async);
        CHECK(k.is_callback == c.is_callback);
        CHECK(k.is_anonymous == c.is_anonymous);
    }
}

TEST_CASE("class methods are named and typed as a unit") {
    auto ast = js::parse_program("class A {\n  async load() {}\n}");
    const Node* fn = first_function(*ast);
    const Classification k = classify_function(fn);
    CHECK(k.function_type == "MethodDefinition");
    CHECK(k.is_async);
    CHECK_FALSE(k.is_anonymous);
    CHECK_FALSE(k.is_callback);
    CHECK(name_function(fn) == "load");
}

TEST_CASE("callbacks are arguments of call expressions only") {
    auto callee = [](const std::string& src) {
        auto ast = js::parse_program(src);
        return callback_callee_name(first_function(*ast));
    };
    CHECK(callee("setTimeout(() => {}, 5);") == "setTimeout");
    CHECK(callee("arr.map(function (x) { return x; });") == "map");
    CHECK(callee("(f())(() => {});") == std::nullopt);
    CHECK(callee("new Promise((resolve) => {});") == std::nullopt);
    CHECK(callee("const f = () => {};") == std::nullopt);
}

TEST_CASE("find_log_calls accepts only the literal console.log callee") {
    CHECK(find_log_calls(*js::parse_program("console.log(1)")).size() == 1);
    CHECK(find_log_calls(*js::parse_program("console['log'](1)")).empty());
    CHECK(find_log_calls(*js::parse_program("logger.error(1); console.error(1); window.console.log(1)")).empty());
    CHECK(find_log_calls(*js::parse_program("console?.log(1)")).empty());
    CHECK(find_log_calls(*js::parse_program("console.log(console.log(1))")).size() == 2);
    ContextOptions extra;
    extra.extra_console_methods = {"error"};
    CHECK(find_log_calls(*js::parse_program("console.error(1); console.log(2)"), extra).size() == 2);
}

TEST_CASE("match_deleted_logs keeps calls whose start line was deleted") {
    const std::string src =
        "console.log(1);\nconsole.log(2);\nconsole.log(3);\nconsole.log(4);\n"
        "console.log(5);\nconsole.log(6);\nconsole.log(\n  7);\n";
    auto ast = js::parse_program(src);
    const auto calls = find_log_calls(*ast);
    REQUIRE(calls.size() == 7);
    const auto kept = match_deleted_logs(*ast, calls, {2, 5, 8});
    REQUIRE(kept.size() == 2);
    CHECK(ast->start(*kept[0]).line == 2);
    CHECK(ast->start(*kept[1]).line == 5);
    CHECK(match_deleted_logs(*ast, calls, {2, 5, 7}).size() == 3);
}

TEST_CASE("enclosing_block labels") {
    auto block_of = [](const std::string& src) {
        auto ast = js::parse_program(src);
        const auto calls = find_log_calls(*ast);
        REQUIRE(calls.size() == 1);
        return enclosing_block(calls.front());
    };
    CHECK(block_of("console.log(1)") == "Program");
    CHECK(block_of("function f() { console.log(1) }") == "FunctionDeclaration");
    CHECK(block_of("const f = () => console.log(1)") == "ArrowFunctionExpression");
    CHECK(block_of("if (a) { console.log(1) }") == "IfStatement");
    CHECK(block_of("if (a) console.log(1)") == "IfStatement");
    CHECK(block_of("for (const x of y) { console.log(1) }") == "For");
    CHECK(block_of("while (a) { console.log(1) }") == "WhileStatement");
    CHECK(block_of("try { console.log(1) } finally {}") == "TryStatement");
    CHECK(block_of("try {} catch (e) { console.log(1) }") == "CatchClause");
    CHECK(block_of("switch (a) { case 1: console.log(1) }") == "SwitchCase");
    CHECK(block_of("function f() { { console.log(1) } }") == "BlockStatement");
    CHECK(block_of("class A { m() { console.log(1) } }") == "MethodDefinition");
    CHECK(block_of("class A { static { console.log(1) } }") == "ClassBody");
}

TEST_CASE("area fixture reproduces the reference record") {
    auto ast = js::parse_program(read_fixture("context/area.js"));
    const auto logs = match_deleted_logs(*ast, find_log_calls(*ast), {95});
    REQUIRE(logs.size() == 1);
    const LogRecord r = build_log_record(*ast, logs.front(), "src/components/algorithm/area.js",
                                         {"someone/pattern-lab", "abc", std::nullopt, std::nullopt});
    CHECK(r.log_in_string == "console.log(pattern)");
    CHECK(r.function_name == "calcAreasByPattern");
    CHECK(r.function_type == "FunctionDeclaration");
    REQUIRE(r.complexity_of_function.has_value());
    CHECK(*r.complexity_of_function == ComplexityInfo{"calcAreasByPattern", 3, 87});
    CHECK(r.log_loc == LogLocation{{95, 4}, {95, 24}});
    CHECK(r.arguments == std::vector<ArgumentInfo>{{"pattern", "Identifier"}});
    CHECK_FALSE(r.is_async_function);
    CHECK_FALSE(r.is_callback_function);
    CHECK_FALSE(r.is_anonymous_function);
    CHECK(r.block_statement == "FunctionDeclaration");
    CHECK(r.folder_path == "src_components_algorithm_area_js");
}

TEST_CASE("five-log fixture matches the hand-written golden records") {
    auto ast = js::parse_program(read_fixture("context/five_logs.js"));
    const auto logs = match_deleted_logs(*ast, find_log_calls(*ast), {2, 5, 7, 11, 21});
    std::vector<LogRecord> expected;
    std::istringstream golden(read_fixture("context/five_logs.golden.ndjson"));
    for (std::string line; std::getline(golden, line);) {
        if (!line.empty()) expected.push_back(record_from_json(nlohmann::json::parse(line)));
    }
    REQUIRE(logs.size() == expected.size());
    for (std::size_t i = 0; i < logs.size(); ++i) {
        CAPTURE(i);
        const LogRecord r = build_log_record(*ast, logs[i], "src/five_logs.js", kCommit);
        CHECK(to_json(r).dump() == to_json(expected[i]).dump());
    }
}

TEST_CASE("record JSON round trip") {
    auto ast = js::parse_program(read_fixture("context/five_logs.js"));
    for (const Node* call : find_log_calls(*ast)) {
        const LogRecord r = build_log_record(*ast, call, "src/five_logs.js", kCommit);
        CHECK(record_from_json(nlohmann::json::parse(to_json(r).dump())) == r);
    }
}
