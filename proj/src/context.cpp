#include "adhoc/context.hpp"

#include <algorithm>

namespace adhoc::context {

using js::NodeKind;
using js::Role;
namespace flag = js::flag;

namespace {

Role role_in_parent(const Node* node) {
    if (node->parent != nullptr) {
        for (const js::Edge& e : node->parent->edges) {
            if (e.node == node) return e.role;
        }
    }
    return Role::Body;
}

// Type-only wrappers and optional chains do not change what an expression
// names.
const Node* unwrap(const Node* n) {
    while (n != nullptr && (n->is(NodeKind::TSAsExpression) || n->is(NodeKind::TSSatisfiesExpression) ||
                            n->is(NodeKind::TSNonNullExpression) || n->is(NodeKind::TSTypeAssertion) ||
                            n->is(NodeKind::ChainExpression))) {
        n = n->child(Role::Expression);
    }
    return n;
}

bool is_method_value(const Node* fn) {
    const Node* p = fn->parent;
    return fn->is(NodeKind::FunctionExpression) && p != nullptr &&
           (p->is(NodeKind::MethodDefinition) || p->is(NodeKind::TSAbstractMethodDefinition)) &&
           role_in_parent(fn) == Role::Value;
}

std::optional<std::string> key_name(const Node* key, bool computed) {
    if (key == nullptr) return std::nullopt;
    if (key->is(NodeKind::Identifier) && !computed) return std::string(key->text);
    if (key->is(NodeKind::PrivateIdentifier)) return "#" + std::string(key->text);
    if (key->is(NodeKind::Literal) && key->has(flag::StringLiteral)) return std::string(key->text);
    if (key->is(NodeKind::Literal) && !computed) return std::string(key->text);
    return std::nullopt;
}

std::optional<std::string> member_property_name(const Node* member) {
    return key_name(member->child(Role::Property), member->has(flag::Computed));
}

// Name of the function a call invokes: identifier callee, or the property
// of a member callee.
std::optional<std::string> callee_name(const Node* call) {
    const Node* callee = unwrap(call->child(Role::Callee));
    if (callee == nullptr) return std::nullopt;
    if (callee->is(NodeKind::Identifier)) return std::string(callee->text);
    if (callee->is(NodeKind::MemberExpression)) return member_property_name(callee);
    return std::nullopt;
}

// The call whose argument list directly contains `fn`, if any.
const Node* receiving_call(const Node* fn) {
    const Node* p = fn->parent;
    if (p == nullptr || !p->is(NodeKind::CallExpression)) return nullptr;
    return role_in_parent(fn) == Role::Arguments ? p : nullptr;
}

bool is_structural(NodeKind k) {
    switch (k) {
        case NodeKind::TryStatement:
        case NodeKind::CatchClause:
        case NodeKind::IfStatement:
        case NodeKind::ForStatement:
        case NodeKind::ForInStatement:
        case NodeKind::ForOfStatement:
        case NodeKind::WhileStatement:
        case NodeKind::DoWhileStatement:
        case NodeKind::SwitchCase:
        case NodeKind::ClassBody:
        case NodeKind::Program:
            return true;
        default:
            return false;
    }
}

std::string structural_label(NodeKind k) {
    if (k == NodeKind::ForStatement || k == NodeKind::ForInStatement || k == NodeKind::ForOfStatement) return "For";
    return std::string(js::kind_name(k));
}

std::string function_label(const Node* fn) {
    if (is_method_value(fn)) return "MethodDefinition";
    return std::string(js::kind_name(fn->kind));
}

}  // namespace

std::string dotted_name(const Node* n) {
    n = unwrap(n);
    if (n == nullptr) return {};
    switch (n->kind) {
        case NodeKind::Identifier:
            return std::string(n->text);
        case NodeKind::ThisExpression:
            return "this";
        case NodeKind::Super:
            return "super";
        case NodeKind::MemberExpression: {
            const std::string object = dotted_name(n->child(Role::Object));
            const auto prop = member_property_name(n);
            if (object.empty() || !prop) return {};
            return object + "." + *prop;
        }
        default:
            return {};
    }
}

std::vector<const Node*> find_log_calls(const Ast& ast, const ContextOptions& options) {
    std::vector<const Node*> out;
    js::walk(ast.root(), [&](const Node* n) {
        if (!n->is(NodeKind::CallExpression)) return true;
        const Node* callee = n->child(Role::Callee);
        if (callee == nullptr || !callee->is(NodeKind::MemberExpression) || callee->has(flag::Computed) ||
            callee->has(flag::Optional)) {
            return true;
        }
        const Node* object = callee->child(Role::Object);
        const Node* property = callee->child(Role::Property);
        if (object == nullptr || !object->is(NodeKind::Identifier) || object->text != "console") return true;
        if (property == nullptr || !property->is(NodeKind::Identifier)) return true;
        const bool wanted = property->text == "log" ||
                            std::find(options.extra_console_methods.begin(), options.extra_console_methods.end(),
                                      property->text) != options.extra_console_methods.end();
        if (wanted) out.push_back(n);
        return true;
    });
    return out;
}

std::vector<const Node*> match_deleted_logs(const Ast& ast, const std::vector<const Node*>& calls,
                                            const std::set<int>& deleted_lines) {
    std::vector<const Node*> out;
    for (const Node* call : calls) {
        if (deleted_lines.count(ast.start(*call).line) != 0) out.push_back(call);
    }
    return out;
}

std::vector<const Node*> find_functions(const Ast& ast) {
    std::vector<const Node*> out;
    js::walk(ast.root(), [&](const Node* n) {
        if (js::is_function_kind(n->kind) && n->child(Role::Body) != nullptr) out.push_back(n);
        return true;
    });
    return out;
}

std::string enclosing_block(const Node* node) {
    for (const Node* a = node->parent; a != nullptr; a = a->parent) {
        if (is_structural(a->kind)) return structural_label(a->kind);
        if (js::is_function_kind(a->kind)) return function_label(a);
        if (a->is(NodeKind::BlockStatement)) {
            const Node* p = a->parent;
            if (p != nullptr && js::is_function_kind(p->kind)) return function_label(p);
            if (p != nullptr && is_structural(p->kind)) return structural_label(p->kind);
            return "BlockStatement";
        }
    }
    return "Program";
}

std::string name_function(const Node* fn) {
    if (is_method_value(fn)) {
        const Node* method = fn->parent;
        return key_name(method->child(Role::Key), method->has(flag::Computed)).value_or(kAnonymousName);
    }
    if (const Node* id = fn->child(Role::Id)) return std::string(id->text);

    // Parentheses leave no node; type-only wrappers are skipped.
    const Node* self = fn;
    const Node* p = fn->parent;
    while (p != nullptr && unwrap(p) == self && p != self) {
        self = p;
        p = p->parent;
    }
    if (p == nullptr) return kAnonymousName;
    const Role role = role_in_parent(self);

    if (p->is(NodeKind::VariableDeclarator) && role == Role::Init) {
        const Node* id = p->child(Role::Id);
        if (id != nullptr && id->is(NodeKind::Identifier)) return std::string(id->text);
        return kAnonymousName;
    }
    if (p->is(NodeKind::CallExpression) && role == Role::Arguments) {
        return callee_name(p).value_or(kAnonymousName);
    }
    if (p->is(NodeKind::AssignmentExpression) && role == Role::Right) {
        // a = b = function () {} names the function after the leftmost target.
        const Node* outer = p;
        while (outer->parent != nullptr && outer->parent->is(NodeKind::AssignmentExpression) &&
               role_in_parent(outer) == Role::Right) {
            outer = outer->parent;
        }
        const Node* target = unwrap(outer->child(Role::Left));
        if (target != nullptr && target->is(NodeKind::Identifier)) return std::string(target->text);
        if (target != nullptr && target->is(NodeKind::MemberExpression)) {
            return member_property_name(target).value_or(kAnonymousName);
        }
        return kAnonymousName;
    }
    if ((p->is(NodeKind::PropertyDefinition) || p->is(NodeKind::TSAbstractPropertyDefinition) ||
         p->is(NodeKind::Property)) &&
        role == Role::Value) {
        return key_name(p->child(Role::Key), p->has(flag::Computed)).value_or(kAnonymousName);
    }
    return kAnonymousName;
}

Classification classify_function(const Node* fn) {
    Classification c;
    c.is_async = fn->has(flag::Async);
    c.function_type = function_label(fn);
    if (is_method_value(fn)) {
        c.is_callback = false;
        c.is_anonymous = fn->parent->has(flag::Computed) &&
                         !key_name(fn->parent->child(Role::Key), true).has_value();
        return c;
    }
    c.is_callback = receiving_call(fn) != nullptr;
    c.is_anonymous = fn->child(Role::Id) == nullptr;
    return c;
}

std::optional<std::string> callback_callee_name(const Node* fn) {
    const Node* call = receiving_call(fn);
    if (call == nullptr) return std::nullopt;
    return callee_name(call);
}

int cyclomatic_complexity(const Node* fn, bool count_logical_operators) {
    const Node* body = fn->child(Role::Body);
    if (body == nullptr) return 1;
    int decisions = 0;
    js::walk(body, [&](const Node* n) {
        if (n != body && js::is_function_kind(n->kind)) return false;
        switch (n->kind) {
            case NodeKind::IfStatement:
            case NodeKind::ConditionalExpression:
            case NodeKind::ForStatement:
            case NodeKind::ForInStatement:
            case NodeKind::ForOfStatement:
            case NodeKind::WhileStatement:
            case NodeKind::DoWhileStatement:
            case NodeKind::CatchClause:
                ++decisions;
                break;
            case NodeKind::SwitchCase:
                if (n->child(Role::Test) != nullptr) ++decisions;
                break;
            case NodeKind::LogicalExpression:
                if (count_logical_operators) ++decisions;
                break;
            default:
                break;
        }
        return true;
    });
    return 1 + decisions;
}

std::optional<FunctionContext> enclosing_function(const Ast& ast, const Node* node, const ContextOptions& options) {
    for (const Node* a = node->parent; a != nullptr; a = a->parent) {
        if (!js::is_function_kind(a->kind)) continue;
        FunctionContext ctx;
        ctx.node = a;
        const Classification c = classify_function(a);
        ctx.kind = c.function_type;
        ctx.name = name_function(a);
        ctx.is_async = c.is_async;
        ctx.is_callback = c.is_callback;
        ctx.is_anonymous = c.is_anonymous;
        ctx.line = ast.start(is_method_value(a) ? *a->parent : *a).line;
        if (c.is_callback) ctx.callback_callee = callback_callee_name(a);
        (void)options;
        return ctx;
    }
    return std::nullopt;
}

LogRecord build_log_record(const Ast& ast, const Node* call, const std::string& file_path, const CommitInfo& commit,
                           const ContextOptions& options) {
    LogRecord r;
    r.log_in_string = std::string(ast.slice(*call));
    const js::Position start = ast.start(*call);
    const js::Position end = ast.end(*call);
    r.log_loc = {{start.line, start.column}, {end.line, end.column}};
    for (const Node* arg : call->children(Role::Arguments)) {
        r.arguments.push_back({std::string(ast.slice(*arg)), std::string(js::kind_name(arg->kind))});
    }
    r.block_statement = enclosing_block(call);
    if (const auto fn = enclosing_function(ast, call, options)) {
        r.function_name = fn->name;
        r.function_type = fn->kind;
        r.complexity_of_function =
            ComplexityInfo{fn->name, cyclomatic_complexity(fn->node, options.count_logical_operators), fn->line};
        r.is_async_function = fn->is_async;
        r.is_callback_function = fn->is_callback;
        r.is_anonymous_function = fn->is_anonymous;
        r.callback_callee_name = fn->callback_callee;
    }
    r.repository_name = repository_field(commit.repo_full_name);
    r.commit_sha = commit.sha;
    r.folder_path = folder_field(file_path);
    r.event_time = commit.event_time;
    r.author_time = commit.author_time;
    return r;
}

}  // namespace adhoc::context
