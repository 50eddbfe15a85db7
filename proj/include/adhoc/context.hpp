#pragma once

#include "adhoc/js/ast.hpp"
#include "adhoc/record.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace adhoc::context {

using js::Ast;
using js::Node;

struct ContextOptions {
    bool count_logical_operators = true;
    // console methods treated as logs in addition to "log"
    std::vector<std::string> extra_console_methods;
};

struct FunctionContext {
    const Node* node = nullptr;  // the function node (the FunctionExpression for class methods)
    std::string kind;            // FunctionDeclaration, FunctionExpression, ArrowFunctionExpression, MethodDefinition
    std::string name;
    bool is_async = false;
    bool is_callback = false;
    bool is_anonymous = false;
    int line = 1;  // where the function (or method) starts
    std::optional<std::string> callback_callee;
};

struct Classification {
    bool is_async = false;
    bool is_callback = false;
    bool is_anonymous = false;
    std::string function_type;
};

// `console.log(...)` calls with a non-computed member callee on the
// identifier `console`, in source order. Calls nested inside other logs are
// reported separately.
std::vector<const Node*> find_log_calls(const Ast& ast, const ContextOptions& options = {});

std::vector<const Node*> match_deleted_logs(const Ast& ast, const std::vector<const Node*>& calls,
                                            const std::set<int>& deleted_lines);

// Every FunctionDeclaration, FunctionExpression and ArrowFunctionExpression
// that has a body, in source order.
std::vector<const Node*> find_functions(const Ast& ast);

// Label of the nearest structural ancestor. Loops are reported as "For",
// bare nested blocks as "BlockStatement".
std::string enclosing_block(const Node* node);

std::optional<FunctionContext> enclosing_function(const Ast& ast, const Node* node,
                                                  const ContextOptions& options = {});

std::string name_function(const Node* fn);
// "JSON.stringify" for member chains of identifiers; empty when the
// expression has no static dotted name.
std::string dotted_name(const Node* expr);
Classification classify_function(const Node* fn);
std::optional<std::string> callback_callee_name(const Node* fn);
int cyclomatic_complexity(const Node* fn, bool count_logical_operators = true);

struct CommitInfo {
    std::string repo_full_name;
    std::string sha;
    std::optional<std::string> event_time;
    std::optional<std::string> author_time;
};

LogRecord build_log_record(const Ast& ast, const Node* call, const std::string& file_path, const CommitInfo& commit,
                           const ContextOptions& options = {});

}  // namespace adhoc::context
