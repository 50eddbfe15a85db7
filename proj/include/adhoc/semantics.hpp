#pragma once

#include "adhoc/error.hpp"
#include "adhoc/js/ast.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace adhoc::semantics {

enum class ArgKind { literal, template_literal, identifier, member, call, other };

std::string_view arg_kind_name(ArgKind kind);

struct LabelOptions {
    bool word_boundary = false;  // name must not touch identifier characters
};

struct ArgumentProfile {
    int arg_count = 0;
    std::vector<ArgKind> kinds;
    std::vector<std::string> rendered;       // source text; templates keep ${...}
    std::vector<std::string> literal_texts;  // literal value or template raw text, empty otherwise
    std::vector<bool> textual;               // string or template literal
    std::vector<std::string> names;          // identifier or final member property, empty otherwise
    bool has_literal = false;                // a string or template literal argument
    bool has_any_literal = false;            // also counts numbers, booleans, null, regexes
    bool label_names_other = false;
    std::vector<std::string> embedded_callee_names;
};

ArgumentProfile profile_arguments(const js::Ast& ast, const js::Node* call, const LabelOptions& options = {});

// Re-parses the text of a log call. Throws js::SyntaxError when neither the
// JavaScript nor the TypeScript grammar accepts it.
ArgumentProfile profile_log_text(const std::string& log_text, const LabelOptions& options = {});

// Requires exactly two arguments; throws ArgumentError otherwise.
bool detect_label(const ArgumentProfile& profile, const LabelOptions& options = {});

std::string normalize_literal(std::string_view text);

// Dotted callee names of every call inside the arguments, in source order.
// Calls without a static dotted name are skipped.
std::vector<std::string> embedded_calls(const js::Node* call);

}  // namespace adhoc::semantics
