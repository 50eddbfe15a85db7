#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace adhoc::js {

// Node kinds follow the estree vocabulary. TypeScript-only nodes appear only
// where they wrap runtime expressions or stand in for skipped declarations;
// type annotations themselves produce no nodes.
enum class NodeKind : std::uint8_t {
    Program,
    // statements
    ExpressionStatement,
    BlockStatement,
    EmptyStatement,
    DebuggerStatement,
    WithStatement,
    ReturnStatement,
    LabeledStatement,
    BreakStatement,
    ContinueStatement,
    IfStatement,
    SwitchStatement,
    SwitchCase,
    ThrowStatement,
    TryStatement,
    CatchClause,
    WhileStatement,
    DoWhileStatement,
    ForStatement,
    ForInStatement,
    ForOfStatement,
    FunctionDeclaration,
    VariableDeclaration,
    VariableDeclarator,
    ClassDeclaration,
    ImportDeclaration,
    ImportSpecifier,
    ImportDefaultSpecifier,
    ImportNamespaceSpecifier,
    ExportNamedDeclaration,
    ExportSpecifier,
    ExportDefaultDeclaration,
    ExportAllDeclaration,
    // expressions
    Identifier,
    PrivateIdentifier,
    Literal,
    ThisExpression,
    Super,
    ArrayExpression,
    ObjectExpression,
    Property,
    FunctionExpression,
    ArrowFunctionExpression,
    ClassExpression,
    ClassBody,
    MethodDefinition,
    PropertyDefinition,
    StaticBlock,
    UnaryExpression,
    UpdateExpression,
    BinaryExpression,
    LogicalExpression,
    AssignmentExpression,
    ConditionalExpression,
    CallExpression,
    NewExpression,
    MemberExpression,
    ChainExpression,
    SequenceExpression,
    YieldExpression,
    AwaitExpression,
    TemplateLiteral,
    TemplateElement,
    TaggedTemplateExpression,
    SpreadElement,
    ImportExpression,
    MetaProperty,
    // patterns
    ObjectPattern,
    ArrayPattern,
    RestElement,
    AssignmentPattern,
    // JSX
    JSXElement,
    JSXFragment,
    JSXOpeningElement,
    JSXClosingElement,
    JSXOpeningFragment,
    JSXClosingFragment,
    JSXAttribute,
    JSXSpreadAttribute,
    JSXIdentifier,
    JSXNamespacedName,
    JSXMemberExpression,
    JSXExpressionContainer,
    JSXEmptyExpression,
    JSXSpreadChild,
    JSXText,
    // TypeScript wrappers and placeholders
    Decorator,
    TSAsExpression,
    TSSatisfiesExpression,
    TSNonNullExpression,
    TSTypeAssertion,
    TSInstantiationExpression,
    TSParameterProperty,
    TSDeclareFunction,
    TSInterfaceDeclaration,
    TSTypeAliasDeclaration,
    TSEnumDeclaration,
    TSModuleDeclaration,
    TSModuleBlock,
    TSImportEqualsDeclaration,
    TSExportAssignment,
    TSNamespaceExportDeclaration,
    TSAbstractMethodDefinition,
    TSAbstractPropertyDefinition,
    TSIndexSignature,
    TSEmptyBodyFunctionExpression,
};

std::string_view kind_name(NodeKind kind);

bool is_function_kind(NodeKind kind);  // FunctionDeclaration/Expression, Arrow

// The slot a child occupies in its parent, in estree property terms.
enum class Role : std::uint8_t {
    Body,
    Expression,
    Id,
    Params,
    Init,
    Test,
    Consequent,
    Alternate,
    Update,
    Left,
    Right,
    Argument,
    Arguments,
    Callee,
    Object,
    Property,
    Key,
    Value,
    Elements,
    Properties,
    Declarations,
    Cases,
    Block,
    Handler,
    Finalizer,
    Param,
    Label,
    Quasis,
    Expressions,
    Tag,
    Quasi,
    SuperClass,
    Specifiers,
    Source,
    Local,
    Exported,
    Imported,
    Discriminant,
    Meta,
    Declaration,
    Decorators,
    Attributes,
    Children,
    Name,
    Namespace,
    OpeningElement,
    ClosingElement,
    Parameter,
};

namespace flag {
inline constexpr std::uint16_t Computed = 1u << 0;
inline constexpr std::uint16_t Async = 1u << 1;
inline constexpr std::uint16_t Generator = 1u << 2;
inline constexpr std::uint16_t Optional = 1u << 3;
inline constexpr std::uint16_t Static = 1u << 4;
inline constexpr std::uint16_t Prefix = 1u << 5;
inline constexpr std::uint16_t Shorthand = 1u << 6;
inline constexpr std::uint16_t Method = 1u << 7;
inline constexpr std::uint16_t Delegate = 1u << 8;
inline constexpr std::uint16_t Await = 1u << 9;
inline constexpr std::uint16_t ExpressionBody = 1u << 10;
inline constexpr std::uint16_t StringLiteral = 1u << 11;
inline constexpr std::uint16_t Declare = 1u << 12;
}  // namespace flag

struct Node;

struct Edge {
    Role role;
    Node* node;
};

struct Position {
    int line = 1;    // 1-based
    int column = 0;  // 0-based, UTF-16 code units

    friend bool operator==(const Position&, const Position&) = default;
};

struct Node {
    NodeKind kind;
    std::uint32_t begin = 0;  // byte offsets into the source
    std::uint32_t end = 0;
    Node* parent = nullptr;
    // Identifier name, operator, cooked string value, declaration kind
    // ("var"/"let"/"const"), or method kind ("get"/"set"/"constructor").
    std::string_view text;
    std::uint16_t flags = 0;
    std::vector<Edge> edges;  // source order

    bool has(std::uint16_t f) const { return (flags & f) != 0; }
    Node* child(Role role) const;
    std::vector<Node*> children(Role role) const;
    bool is(NodeKind k) const { return kind == k; }
};

// Owns every node of one parse together with the source text they point into.
class Ast {
public:
    explicit Ast(std::string source);
    Ast(const Ast&) = delete;
    Ast& operator=(const Ast&) = delete;
    Ast(Ast&&) = default;
    Ast& operator=(Ast&&) = default;

    const std::string& source() const { return *source_; }
    Node* root() const { return root_; }
    void set_root(Node* root) { root_ = root; }

    Node* make(NodeKind kind, std::uint32_t begin);
    std::string_view intern(std::string text);

    Position position(std::uint32_t offset) const;
    Position start(const Node& node) const { return position(node.begin); }
    Position end(const Node& node) const { return position(node.end); }
    std::string_view slice(const Node& node) const;

    std::size_t node_count() const { return nodes_.size(); }

private:
    std::unique_ptr<std::string> source_;  // stable address: nodes view into it
    std::vector<std::uint32_t> line_starts_;
    std::deque<Node> nodes_;
    std::deque<std::string> strings_;
    Node* root_ = nullptr;
};

void attach(Node* parent, Role role, Node* child);

// Pre-order walk over the subtree. The callback returns false to skip the
// children of the node it was handed.
template <typename Fn>
void walk(Node* node, Fn&& fn) {
    if (node == nullptr) return;
    if (!fn(node)) return;
    for (const Edge& e : node->edges) walk(e.node, fn);
}

template <typename Fn>
void walk(const Node* node, Fn&& fn) {
    if (node == nullptr) return;
    if (!fn(node)) return;
    for (const Edge& e : node->edges) walk(static_cast<const Node*>(e.node), fn);
}

}  // namespace adhoc::js
