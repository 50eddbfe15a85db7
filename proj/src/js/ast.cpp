#include "adhoc/js/ast.hpp"

#include <algorithm>

namespace adhoc::js {

namespace {

constexpr std::string_view kKindNames[] = {
    "Program",
    "ExpressionStatement",
    "BlockStatement",
    "EmptyStatement",
    "DebuggerStatement",
    "WithStatement",
    "ReturnStatement",
    "LabeledStatement",
    "BreakStatement",
    "ContinueStatement",
    "IfStatement",
    "SwitchStatement",
    "SwitchCase",
    "ThrowStatement",
    "TryStatement",
    "CatchClause",
    "WhileStatement",
    "DoWhileStatement",
    "ForStatement",
    "ForInStatement",
    "ForOfStatement",
    "FunctionDeclaration",
    "VariableDeclaration",
    "VariableDeclarator",
    "ClassDeclaration",
    "ImportDeclaration",
    "ImportSpecifier",
    "ImportDefaultSpecifier",
    "ImportNamespaceSpecifier",
    "ExportNamedDeclaration",
    "ExportSpecifier",
    "ExportDefaultDeclaration",
    "ExportAllDeclaration",
    "Identifier",
    "PrivateIdentifier",
    "Literal",
    "ThisExpression",
    "Super",
    "ArrayExpression",
    "ObjectExpression",
    "Property",
    "FunctionExpression",
    "ArrowFunctionExpression",
    "ClassExpression",
    "ClassBody",
    "MethodDefinition",
    "PropertyDefinition",
    "StaticBlock",
    "UnaryExpression",
    "UpdateExpression",
    "BinaryExpression",
    "LogicalExpression",
    "AssignmentExpression",
    "ConditionalExpression",
    "CallExpression",
    "NewExpression",
    "MemberExpression",
    "ChainExpression",
    "SequenceExpression",
    "YieldExpression",
    "AwaitExpression",
    "TemplateLiteral",
    "TemplateElement",
    "TaggedTemplateExpression",
    "SpreadElement",
    "ImportExpression",
    "MetaProperty",
    "ObjectPattern",
    "ArrayPattern",
    "RestElement",
    "AssignmentPattern",
    "JSXElement",
    "JSXFragment",
    "JSXOpeningElement",
    "JSXClosingElement",
    "JSXOpeningFragment",
    "JSXClosingFragment",
    "JSXAttribute",
    "JSXSpreadAttribute",
    "JSXIdentifier",
    "JSXNamespacedName",
    "JSXMemberExpression",
    "JSXExpressionContainer",
    "JSXEmptyExpression",
    "JSXSpreadChild",
    "JSXText",
    "Decorator",
    "TSAsExpression",
    "TSSatisfiesExpression",
    "TSNonNullExpression",
    "TSTypeAssertion",
    "TSInstantiationExpression",
    "TSParameterProperty",
    "TSDeclareFunction",
    "TSInterfaceDeclaration",
    "TSTypeAliasDeclaration",
    "TSEnumDeclaration",
    "TSModuleDeclaration",
    "TSModuleBlock",
    "TSImportEqualsDeclaration",
    "TSExportAssignment",
    "TSNamespaceExportDeclaration",
    "TSAbstractMethodDefinition",
    "TSAbstractPropertyDefinition",
    "TSIndexSignature",
    "TSEmptyBodyFunctionExpression",
};

static_assert(std::size(kKindNames) == static_cast<std::size_t>(NodeKind::TSEmptyBodyFunctionExpression) + 1);

}  // namespace

std::string_view kind_name(NodeKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

bool is_function_kind(NodeKind kind) {
    return kind == NodeKind::FunctionDeclaration || kind == NodeKind::FunctionExpression ||
           kind == NodeKind::ArrowFunctionExpression;
}

Node* Node::child(Role role) const {
    for (const Edge& e : edges) {
        if (e.role == role) return e.node;
    }
    return nullptr;
}

std::vector<Node*> Node::children(Role role) const {
    std::vector<Node*> out;
    for (const Edge& e : edges) {
        if (e.role == role) out.push_back(e.node);
    }
    return out;
}

void attach(Node* parent, Role role, Node* child) {
    if (child == nullptr) return;
    child->parent = parent;
    parent->edges.push_back({role, child});
}

Ast::Ast(std::string source) : source_(std::make_unique<std::string>(std::move(source))) {
    line_starts_.push_back(0);
    const std::string& src = *source_;
    const std::size_t n = src.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = static_cast<unsigned char>(src[i]);
        if (c == '\n') {
            line_starts_.push_back(static_cast<std::uint32_t>(i + 1));
        } else if (c == '\r') {
            if (i + 1 < n && src[i + 1] == '\n') ++i;
            line_starts_.push_back(static_cast<std::uint32_t>(i + 1));
        } else if (c == 0xE2 && i + 2 < n && static_cast<unsigned char>(src[i + 1]) == 0x80 &&
                   (static_cast<unsigned char>(src[i + 2]) == 0xA8 ||
                    static_cast<unsigned char>(src[i + 2]) == 0xA9)) {
            // U+2028 / U+2029
            i += 2;
            line_starts_.push_back(static_cast<std::uint32_t>(i + 1));
        }
    }
}

Node* Ast::make(NodeKind kind, std::uint32_t begin) {
    Node& n = nodes_.emplace_back();
    n.kind = kind;
    n.begin = begin;
    n.end = begin;
    return &n;
}

std::string_view Ast::intern(std::string text) { return strings_.emplace_back(std::move(text)); }

Position Ast::position(std::uint32_t offset) const {
    auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
    const auto line_index = static_cast<std::size_t>(std::distance(line_starts_.begin(), it) - 1);
    const std::uint32_t line_begin = line_starts_[line_index];
    int column = 0;
    const std::string& src = *source_;
    for (std::uint32_t i = line_begin; i < offset && i < src.size(); ++i) {
        const auto c = static_cast<unsigned char>(src[i]);
        if ((c & 0xC0) == 0x80) continue;  // continuation byte
        column += (c >= 0xF0) ? 2 : 1;      // astral code points take a surrogate pair
    }
    return {static_cast<int>(line_index) + 1, column};
}

std::string_view Ast::slice(const Node& node) const {
    return std::string_view(*source_).substr(node.begin, node.end - node.begin);
}

}  // namespace adhoc::js
