#include "adhoc/semantics.hpp"

#include "adhoc/context.hpp"
#include "adhoc/js/parser.hpp"

#include <algorithm>
#include <cctype>

namespace adhoc::semantics {

using js::Node;
using js::NodeKind;
using js::Role;

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '$'; }

bool contains_name(std::string_view haystack, std::string_view name, const LabelOptions& options) {
    if (name.empty()) return false;
    const std::string h = lower(haystack);
    const std::string n = lower(name);
    for (std::size_t pos = h.find(n); pos != std::string::npos; pos = h.find(n, pos + 1)) {
        if (!options.word_boundary) return true;
        const bool left_ok = pos == 0 || !is_ident_char(h[pos - 1]);
        const bool right_ok = pos + n.size() == h.size() || !is_ident_char(h[pos + n.size()]);
        if (left_ok && right_ok) return true;
    }
    return false;
}

// Byte length of the UTF-8 sequence starting with `lead`.
std::size_t utf8_length(unsigned char lead) {
    if (lead < 0x80) return 1;
    if ((lead >> 5) == 0x6) return 2;
    if ((lead >> 4) == 0xE) return 3;
    if ((lead >> 3) == 0x1E) return 4;
    return 1;
}

bool is_numeric(std::string_view s) {
    int digits = 0;
    int dots = 0;
    for (char c : s) {
        if (c >= '0' && c <= '9') {
            ++digits;
        } else if (c == '.') {
            ++dots;
        } else {
            return false;
        }
    }
    return digits > 0 && dots <= 1;
}

}  // namespace

std::string_view arg_kind_name(ArgKind kind) {
    switch (kind) {
        case ArgKind::literal:
            return "literal";
        case ArgKind::template_literal:
            return "template";
        case ArgKind::identifier:
            return "identifier";
        case ArgKind::member:
            return "member";
        case ArgKind::call:
            return "call";
        case ArgKind::other:
            return "other";
    }
    return "other";
}

ArgumentProfile profile_arguments(const js::Ast& ast, const Node* call, const LabelOptions& options) {
    ArgumentProfile p;
    for (const Node* arg : call->children(Role::Arguments)) {
        ++p.arg_count;
        p.rendered.emplace_back(ast.slice(*arg));
        std::string literal_text;
        std::string name;
        ArgKind kind = ArgKind::other;
        switch (arg->kind) {
            case NodeKind::Literal:
                kind = ArgKind::literal;
                literal_text = std::string(arg->text);
                p.has_any_literal = true;
                if (arg->has(js::flag::StringLiteral)) p.has_literal = true;
                break;
            case NodeKind::TemplateLiteral: {
                kind = ArgKind::template_literal;
                const std::string_view src = ast.slice(*arg);
                literal_text = std::string(src.substr(1, src.size() >= 2 ? src.size() - 2 : 0));
                p.has_literal = true;
                p.has_any_literal = true;
                break;
            }
            case NodeKind::Identifier:
                kind = ArgKind::identifier;
                name = std::string(arg->text);
                break;
            case NodeKind::MemberExpression: {
                kind = ArgKind::member;
                const Node* prop = arg->child(Role::Property);
                if (prop != nullptr && !arg->has(js::flag::Computed) &&
                    (prop->is(NodeKind::Identifier) || prop->is(NodeKind::PrivateIdentifier))) {
                    name = std::string(prop->text);
                }
                break;
            }
            case NodeKind::CallExpression:
                kind = ArgKind::call;
                break;
            default:
                break;
        }
        p.kinds.push_back(kind);
        p.textual.push_back(kind == ArgKind::template_literal ||
                            (kind == ArgKind::literal && arg->has(js::flag::StringLiteral)));
        p.literal_texts.push_back(std::move(literal_text));
        p.names.push_back(std::move(name));
    }
    p.embedded_callee_names = embedded_calls(call);
    p.label_names_other = p.arg_count == 2 && detect_label(p, options);
    return p;
}

ArgumentProfile profile_log_text(const std::string& log_text, const LabelOptions& options) {
    std::unique_ptr<js::Ast> ast;
    try {
        ast = js::parse_expression(log_text);
    } catch (const js::SyntaxError&) {
        ast = js::parse_expression(log_text, {true, false});
    }
    const Node* root = ast->root();
    while (root != nullptr && root->is(NodeKind::ChainExpression)) root = root->child(Role::Expression);
    if (root == nullptr || !root->is(NodeKind::CallExpression)) throw js::SyntaxError("not a call expression", 0);
    return profile_arguments(*ast, root, options);
}

bool detect_label(const ArgumentProfile& profile, const LabelOptions& options) {
    if (profile.arg_count != 2 || profile.textual.size() != 2 || profile.literal_texts.size() != 2 ||
        profile.names.size() != 2) {
        throw ArgumentError("label detection needs exactly two arguments, got " + std::to_string(profile.arg_count));
    }
    for (int i = 0; i < 2; ++i) {
        const int other = 1 - i;
        if (!profile.textual[i] || profile.textual[other]) continue;
        if (contains_name(profile.literal_texts[i], profile.names[other], options)) return true;
    }
    return false;
}

std::string normalize_literal(std::string_view text) {
    if (is_numeric(text)) return "<NUM>";
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        const std::size_t len = std::min(utf8_length(static_cast<unsigned char>(text[i])), text.size() - i);
        const std::string_view unit = text.substr(i, len);
        std::size_t run = 1;
        std::size_t j = i + len;
        while (j + len <= text.size() && text.substr(j, len) == unit) {
            ++run;
            j += len;
        }
        if (run > 3) {
            out.append(unit);
            out.push_back('R');
        } else {
            for (std::size_t k = 0; k < run; ++k) out.append(unit);
        }
        i = j;
    }
    return out;
}

std::vector<std::string> embedded_calls(const Node* call) {
    std::vector<std::string> out;
    for (const Node* arg : call->children(Role::Arguments)) {
        js::walk(arg, [&](const Node* n) {
            if (n->is(NodeKind::CallExpression)) {
                std::string name = context::dotted_name(n->child(Role::Callee));
                if (!name.empty()) out.push_back(std::move(name));
            }
            return true;
        });
    }
    return out;
}

}  // namespace adhoc::semantics
