#include "adhoc/js/parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <unordered_set>
#include <vector>

namespace adhoc::js {

namespace {

constexpr std::array<std::string_view, 37> kReserved = {
    "break",  "case",   "catch",      "class", "const",  "continue", "debugger", "default",
    "delete", "do",     "else",       "export", "extends", "finally", "for",     "function",
    "if",     "import", "in",         "instanceof", "new", "return",  "super",   "switch",
    "this",   "throw",  "try",        "typeof", "var",    "void",     "while",   "with",
    "null",   "true",   "false",      "enum",  "await"};

bool is_reserved(std::string_view word) {
    // `await` is only reserved where the caller says so; see binding_identifier.
    return std::find(kReserved.begin(), kReserved.end() - 1, word) != kReserved.end() - 1;
}

constexpr std::array<std::string_view, 16> kAssignOps = {
    "=", "+=", "-=", "*=", "/=", "%=", "**=", "<<=", ">>=", ">>>=", "&=", "|=", "^=", "&&=", "||=", "?\?="};

struct Context {
    bool in_function = false;
    bool in_async = false;
    bool in_generator = false;
    bool no_in = false;
};

class Parser {
public:
    Parser(Ast& ast, const ParseOptions& options) : ast_(ast), lex_(ast.source(), ast), opt_(options) {
        advance();
    }

    Node* program();
    Node* standalone_expression();

private:
    struct State {
        std::uint32_t lex_pos;
        Token tok;
        std::uint32_t prev_end;
        Context ctx;
    };

    // -- token plumbing ----------------------------------------------------
    void advance() {
        prev_end_ = tok_.end;
        tok_ = lex_.next();
    }
    bool at(std::string_view p) const { return tok_.is(p); }
    bool at_word(std::string_view w) const { return tok_.is_word(w); }
    bool at_identifier() const { return tok_.type == TokenType::Identifier; }
    bool eat(std::string_view p) {
        if (!at(p)) return false;
        advance();
        return true;
    }
    bool eat_word(std::string_view w) {
        if (!at_word(w)) return false;
        advance();
        return true;
    }
    void expect(std::string_view p) {
        if (!eat(p)) unexpected("expected '" + std::string(p) + "'");
    }
    void expect_word(std::string_view w) {
        if (!eat_word(w)) unexpected("expected '" + std::string(w) + "'");
    }
    [[noreturn]] void unexpected(const std::string& what = "unexpected token") const {
        std::string msg = what;
        if (tok_.type == TokenType::Eof) {
            msg += " (end of input)";
        } else {
            msg += " near '" + std::string(ast_.source().substr(tok_.begin, std::min<std::uint32_t>(tok_.end - tok_.begin, 20))) + "'";
        }
        throw SyntaxError(msg, tok_.begin);
    }
    State save() const { return {lex_.position(), tok_, prev_end_, ctx_}; }
    void restore(const State& s) {
        lex_.reset(s.lex_pos);
        tok_ = s.tok;
        prev_end_ = s.prev_end;
        ctx_ = s.ctx;
    }
    Token peek() {
        const State s = save();
        advance();
        Token t = tok_;
        restore(s);
        return t;
    }
    void consume_semicolon() {
        if (eat(";")) return;
        if (at("}") || tok_.type == TokenType::Eof || tok_.newline_before) return;
        unexpected("expected ';'");
    }
    void expect_greater();

    // -- nodes ---------------------------------------------------------------
    Node* make(NodeKind kind, std::uint32_t begin) { return ast_.make(kind, begin); }
    Node* finish(Node* n) {
        n->end = prev_end_;
        return n;
    }
    Node* token_node(NodeKind kind) {
        Node* n = make(kind, tok_.begin);
        n->text = tok_.value;
        advance();
        return finish(n);
    }
    Node* copy_identifier(const Node* id) {
        Node* n = make(id->kind, id->begin);
        n->end = id->end;
        n->text = id->text;
        return n;
    }

    // -- statements ----------------------------------------------------------
    Node* statement();
    Node* block();
    Node* function_body(bool is_async, bool is_generator);
    Node* variable_declaration(std::uint32_t begin, bool with_semicolon);
    Node* if_statement();
    Node* for_statement();
    Node* while_statement();
    Node* do_while_statement();
    Node* return_statement();
    Node* jump_statement(NodeKind kind);
    Node* throw_statement();
    Node* try_statement();
    Node* switch_statement();
    Node* with_statement();
    Node* import_declaration();
    Node* export_declaration(std::vector<Node*> decorators);
    Node* expression_statement();
    bool let_starts_declaration();

    // -- functions and classes ---------------------------------------------
    Node* function(std::uint32_t begin, bool is_async, bool is_statement, bool allow_bodiless);
    void params(Node* fn);
    Node* param();
    Node* method_value(bool is_async, bool is_generator, bool allow_bodiless);
    Node* class_(std::uint32_t begin, bool is_statement, std::vector<Node*> decorators, bool is_abstract);
    Node* class_member();
    std::vector<Node*> decorators();
    Node* property_key(bool allow_private);

    // -- expressions ---------------------------------------------------------
    Node* expression();
    Node* assignment();
    Node* try_arrow();
    Node* arrow_from_params(std::uint32_t begin, bool is_async);
    Node* arrow_body(Node* arrow, bool is_async);
    Node* conditional();
    Node* binary(int min_precedence);
    int precedence() const;
    Node* unary();
    Node* postfix();
    Node* left_hand_side();
    Node* new_expression();
    Node* call_tail(Node* expr, std::uint32_t begin, bool allow_calls);
    void arguments(Node* call);
    Node* primary();
    Node* array_literal();
    Node* object_literal();
    Node* object_member();
    Node* template_literal();
    Node* yield_expression();
    Node* to_pattern(Node* node);
    bool await_allowed() const { return ctx_.in_async || !ctx_.in_function; }

    // -- patterns ------------------------------------------------------------
    Node* binding_target();
    Node* binding_element();
    Node* binding_identifier();
    Node* identifier_name();

    // -- JSX -----------------------------------------------------------------
    Node* jsx_element(bool nested);
    Node* jsx_element_name();
    Node* jsx_attribute();
    void jsx_children(Node* element);
    void jsx_close(bool nested);

    // -- TypeScript ----------------------------------------------------------
    bool ts() const { return opt_.typescript; }
    void skip_group();
    void skip_template();
    void skip_type();
    void skip_union();
    void skip_intersection();
    void skip_type_operator();
    void skip_postfix_type();
    void skip_primary_type();
    void skip_type_arguments();
    void skip_type_parameters();
    void skip_type_annotation() {
        if (ts() && eat(":")) skip_type();
    }
    bool try_type_arguments_before_call();
    Node* ts_declaration();
    Node* ts_module(std::uint32_t begin);
    Node* ts_import_equals(std::uint32_t begin);
    bool ts_declaration_start();

    Ast& ast_;
    Lexer lex_;
    ParseOptions opt_;
    Token tok_;
    std::uint32_t prev_end_ = 0;
    Context ctx_;
    std::unordered_set<std::uint32_t> failed_arrows_;
};

// ===========================================================================
// Program and statements
// ===========================================================================

Node* Parser::program() {
    Node* prog = make(NodeKind::Program, 0);
    while (tok_.type != TokenType::Eof) attach(prog, Role::Body, statement());
    prog->end = static_cast<std::uint32_t>(ast_.source().size());
    return prog;
}

Node* Parser::standalone_expression() {
    Node* e = expression();
    if (tok_.type != TokenType::Eof) unexpected("trailing input after expression");
    return e;
}

bool Parser::let_starts_declaration() {
    const Token next = peek();
    if (next.type == TokenType::Identifier) return !next.is_word("in") && !next.is_word("instanceof");
    return next.is("[") || next.is("{");
}

Node* Parser::statement() {
    if (tok_.type == TokenType::Punctuator) {
        if (at("{")) return block();
        if (at(";")) return token_node(NodeKind::EmptyStatement);
        if (at("@")) {
            const std::uint32_t begin = tok_.begin;
            std::vector<Node*> decos = decorators();
            if (at_word("export")) return export_declaration(std::move(decos));
            const bool is_abstract = eat_word("abstract");
            if (!at_word("class")) unexpected("expected class after decorators");
            return class_(begin, true, std::move(decos), is_abstract);
        }
        return expression_statement();
    }
    if (tok_.type != TokenType::Identifier || tok_.escaped) return expression_statement();

    const std::string_view w = tok_.value;
    const std::uint32_t begin = tok_.begin;
    if (w == "var" || w == "const") {
        if (w == "const" && ts()) {
            const Token next = peek();
            if (next.is_word("enum")) {
                advance();
                return ts_declaration();
            }
        }
        return variable_declaration(begin, true);
    }
    if (w == "let" && let_starts_declaration()) return variable_declaration(begin, true);
    if (w == "function") return function(begin, false, true, ts());
    if (w == "async") {
        const Token next = peek();
        if (next.is_word("function") && !next.newline_before) {
            advance();
            return function(begin, true, true, ts());
        }
    }
    if (w == "class") return class_(begin, true, {}, false);
    if (w == "if") return if_statement();
    if (w == "for") return for_statement();
    if (w == "while") return while_statement();
    if (w == "do") return do_while_statement();
    if (w == "return") return return_statement();
    if (w == "break") return jump_statement(NodeKind::BreakStatement);
    if (w == "continue") return jump_statement(NodeKind::ContinueStatement);
    if (w == "throw") return throw_statement();
    if (w == "try") return try_statement();
    if (w == "switch") return switch_statement();
    if (w == "with") return with_statement();
    if (w == "debugger") {
        Node* n = make(NodeKind::DebuggerStatement, begin);
        advance();
        consume_semicolon();
        return finish(n);
    }
    if (w == "import") {
        const Token next = peek();
        if (!next.is("(") && !next.is(".")) return import_declaration();
    }
    if (w == "export") return export_declaration({});
    if (ts() && ts_declaration_start()) return ts_declaration();

    // labeled statement
    if (!is_reserved(w)) {
        const Token next = peek();
        if (next.is(":")) {
            Node* n = make(NodeKind::LabeledStatement, begin);
            attach(n, Role::Label, token_node(NodeKind::Identifier));
            expect(":");
            attach(n, Role::Body, statement());
            return finish(n);
        }
    }
    return expression_statement();
}

Node* Parser::expression_statement() {
    Node* n = make(NodeKind::ExpressionStatement, tok_.begin);
    attach(n, Role::Expression, expression());
    consume_semicolon();
    return finish(n);
}

Node* Parser::block() {
    Node* n = make(NodeKind::BlockStatement, tok_.begin);
    expect("{");
    while (!at("}")) {
        if (tok_.type == TokenType::Eof) unexpected("expected '}'");
        attach(n, Role::Body, statement());
    }
    advance();
    return finish(n);
}

Node* Parser::function_body(bool is_async, bool is_generator) {
    const Context saved = ctx_;
    ctx_ = Context{true, is_async, is_generator, false};
    Node* body = block();
    ctx_ = saved;
    return body;
}

Node* Parser::variable_declaration(std::uint32_t begin, bool with_semicolon) {
    Node* decl = make(NodeKind::VariableDeclaration, begin);
    decl->text = tok_.value;
    advance();
    for (;;) {
        Node* d = make(NodeKind::VariableDeclarator, tok_.begin);
        attach(d, Role::Id, binding_target());
        if (ts()) eat("!");
        skip_type_annotation();
        if (eat("=")) attach(d, Role::Init, assignment());
        attach(decl, Role::Declarations, finish(d));
        if (!eat(",")) break;
    }
    if (with_semicolon) consume_semicolon();
    return finish(decl);
}

Node* Parser::if_statement() {
    Node* n = make(NodeKind::IfStatement, tok_.begin);
    advance();
    expect("(");
    attach(n, Role::Test, expression());
    expect(")");
    attach(n, Role::Consequent, statement());
    if (eat_word("else")) attach(n, Role::Alternate, statement());
    return finish(n);
}

Node* Parser::for_statement() {
    const std::uint32_t begin = tok_.begin;
    advance();
    bool is_await = false;
    if (at_word("await")) {
        is_await = true;
        advance();
    }
    expect("(");
    Node* init = nullptr;
    if (!at(";")) {
        const Context saved = ctx_;
        ctx_.no_in = true;
        if (at_word("var") || at_word("const") || (at_word("let") && let_starts_declaration())) {
            init = variable_declaration(tok_.begin, false);
        } else {
            init = expression();
        }
        ctx_ = saved;
        if (at_word("of") || at_word("in")) {
            const bool of = at_word("of");
            advance();
            Node* n = make(of ? NodeKind::ForOfStatement : NodeKind::ForInStatement, begin);
            if (is_await) n->flags |= flag::Await;
            if (!init->is(NodeKind::VariableDeclaration)) init = to_pattern(init);
            attach(n, Role::Left, init);
            attach(n, Role::Right, of ? assignment() : expression());
            expect(")");
            attach(n, Role::Body, statement());
            return finish(n);
        }
    }
    Node* n = make(NodeKind::ForStatement, begin);
    attach(n, Role::Init, init);
    expect(";");
    if (!at(";")) attach(n, Role::Test, expression());
    expect(";");
    if (!at(")")) attach(n, Role::Update, expression());
    expect(")");
    attach(n, Role::Body, statement());
    return finish(n);
}

Node* Parser::while_statement() {
    Node* n = make(NodeKind::WhileStatement, tok_.begin);
    advance();
    expect("(");
    attach(n, Role::Test, expression());
    expect(")");
    attach(n, Role::Body, statement());
    return finish(n);
}

Node* Parser::do_while_statement() {
    Node* n = make(NodeKind::DoWhileStatement, tok_.begin);
    advance();
    attach(n, Role::Body, statement());
    expect_word("while");
    expect("(");
    attach(n, Role::Test, expression());
    expect(")");
    eat(";");
    return finish(n);
}

Node* Parser::return_statement() {
    Node* n = make(NodeKind::ReturnStatement, tok_.begin);
    advance();
    if (!at(";") && !at("}") && tok_.type != TokenType::Eof && !tok_.newline_before) {
        attach(n, Role::Argument, expression());
    }
    consume_semicolon();
    return finish(n);
}

Node* Parser::jump_statement(NodeKind kind) {
    Node* n = make(kind, tok_.begin);
    advance();
    if (at_identifier() && !tok_.newline_before && !is_reserved(tok_.value)) {
        attach(n, Role::Label, token_node(NodeKind::Identifier));
    }
    consume_semicolon();
    return finish(n);
}

Node* Parser::throw_statement() {
    Node* n = make(NodeKind::ThrowStatement, tok_.begin);
    advance();
    if (tok_.newline_before) unexpected("illegal newline after throw");
    attach(n, Role::Argument, expression());
    consume_semicolon();
    return finish(n);
}

Node* Parser::try_statement() {
    Node* n = make(NodeKind::TryStatement, tok_.begin);
    advance();
    attach(n, Role::Block, block());
    if (at_word("catch")) {
        Node* c = make(NodeKind::CatchClause, tok_.begin);
        advance();
        if (eat("(")) {
            attach(c, Role::Param, binding_target());
            skip_type_annotation();
            expect(")");
        }
        attach(c, Role::Body, block());
        attach(n, Role::Handler, finish(c));
    }
    if (eat_word("finally")) attach(n, Role::Finalizer, block());
    if (n->child(Role::Handler) == nullptr && n->child(Role::Finalizer) == nullptr) {
        unexpected("missing catch or finally after try");
    }
    return finish(n);
}

Node* Parser::switch_statement() {
    Node* n = make(NodeKind::SwitchStatement, tok_.begin);
    advance();
    expect("(");
    attach(n, Role::Discriminant, expression());
    expect(")");
    expect("{");
    while (!at("}")) {
        Node* c = make(NodeKind::SwitchCase, tok_.begin);
        if (eat_word("case")) {
            attach(c, Role::Test, expression());
        } else {
            expect_word("default");
        }
        expect(":");
        while (!at("}") && !at_word("case") && !at_word("default")) {
            if (tok_.type == TokenType::Eof) unexpected("expected '}'");
            attach(c, Role::Consequent, statement());
        }
        attach(n, Role::Cases, finish(c));
    }
    advance();
    return finish(n);
}

Node* Parser::with_statement() {
    Node* n = make(NodeKind::WithStatement, tok_.begin);
    advance();
    expect("(");
    attach(n, Role::Object, expression());
    expect(")");
    attach(n, Role::Body, statement());
    return finish(n);
}

Node* Parser::import_declaration() {
    const std::uint32_t begin = tok_.begin;
    advance();
    if (ts() && at_word("type")) {
        const Token next = peek();
        if (next.is("{") || next.is("*") || (next.type == TokenType::Identifier && !next.is_word("from"))) advance();
    }
    Node* n = make(NodeKind::ImportDeclaration, begin);
    if (tok_.type != TokenType::String) {
        if (at_identifier() && !at("{")) {
            Node* local = binding_identifier();
            if (ts() && at("=")) return ts_import_equals(begin);
            Node* s = make(NodeKind::ImportDefaultSpecifier, local->begin);
            attach(s, Role::Local, local);
            attach(n, Role::Specifiers, finish(s));
            if (!eat(",")) goto from_clause;
        }
        if (at("*")) {
            Node* s = make(NodeKind::ImportNamespaceSpecifier, tok_.begin);
            advance();
            expect_word("as");
            attach(s, Role::Local, binding_identifier());
            attach(n, Role::Specifiers, finish(s));
        } else if (eat("{")) {
            while (!at("}")) {
                if (ts() && at_word("type")) {
                    const Token next = peek();
                    if (next.type == TokenType::Identifier || next.type == TokenType::String) {
                        if (!next.is_word("as")) advance();
                    }
                }
                Node* s = make(NodeKind::ImportSpecifier, tok_.begin);
                Node* imported = tok_.type == TokenType::String ? token_node(NodeKind::Literal) : identifier_name();
                attach(s, Role::Imported, imported);
                if (eat_word("as")) {
                    attach(s, Role::Local, binding_identifier());
                } else {
                    attach(s, Role::Local, copy_identifier(imported));
                }
                attach(n, Role::Specifiers, finish(s));
                if (!at("}")) expect(",");
            }
            advance();
        }
    from_clause:
        expect_word("from");
    }
    if (tok_.type != TokenType::String) unexpected("expected module specifier");
    Node* src = token_node(NodeKind::Literal);
    src->flags |= flag::StringLiteral;
    attach(n, Role::Source, src);
    if ((at_word("with") || (at_word("assert") && !tok_.newline_before))) {
        advance();
        skip_group();
    }
    consume_semicolon();
    return finish(n);
}

Node* Parser::export_declaration(std::vector<Node*> decos) {
    const std::uint32_t begin = decos.empty() ? tok_.begin : decos.front()->begin;
    advance();  // export
    if (ts()) {
        if (at("=")) {
            Node* n = make(NodeKind::TSExportAssignment, begin);
            advance();
            attach(n, Role::Expression, expression());
            consume_semicolon();
            return finish(n);
        }
        if (at_word("as")) {
            Node* n = make(NodeKind::TSNamespaceExportDeclaration, begin);
            advance();
            expect_word("namespace");
            attach(n, Role::Id, identifier_name());
            consume_semicolon();
            return finish(n);
        }
        if (at_word("import")) {
            const std::uint32_t import_begin = tok_.begin;
            advance();
            binding_identifier();
            Node* inner = ts_import_equals(import_begin);
            Node* n = make(NodeKind::ExportNamedDeclaration, begin);
            attach(n, Role::Declaration, inner);
            return finish(n);
        }
    }
    if (at_word("default")) {
        advance();
        Node* n = make(NodeKind::ExportDefaultDeclaration, begin);
        const std::uint32_t decl_begin = tok_.begin;
        if (at_word("function")) {
            attach(n, Role::Declaration, function(decl_begin, false, true, ts()));
        } else if (at_word("async") && peek().is_word("function") && !peek().newline_before) {
            advance();
            attach(n, Role::Declaration, function(decl_begin, true, true, ts()));
        } else if (at_word("class")) {
            attach(n, Role::Declaration, class_(decl_begin, true, std::move(decos), false));
        } else if (at("@")) {
            std::vector<Node*> inner = decorators();
            attach(n, Role::Declaration, class_(decl_begin, true, std::move(inner), false));
        } else if (ts() && at_word("abstract") && peek().is_word("class")) {
            advance();
            attach(n, Role::Declaration, class_(decl_begin, true, std::move(decos), true));
        } else if (ts() && at_word("interface")) {
            attach(n, Role::Declaration, ts_declaration());
        } else {
            attach(n, Role::Declaration, assignment());
            consume_semicolon();
        }
        return finish(n);
    }
    if (at("*")) {
        Node* n = make(NodeKind::ExportAllDeclaration, begin);
        advance();
        if (eat_word("as")) {
            attach(n, Role::Exported, tok_.type == TokenType::String ? token_node(NodeKind::Literal) : identifier_name());
        }
        expect_word("from");
        if (tok_.type != TokenType::String) unexpected("expected module specifier");
        attach(n, Role::Source, token_node(NodeKind::Literal));
        if (at_word("with") || (at_word("assert") && !tok_.newline_before)) {
            advance();
            skip_group();
        }
        consume_semicolon();
        return finish(n);
    }
    if (ts() && at_word("type") && peek().is("{")) advance();
    Node* n = make(NodeKind::ExportNamedDeclaration, begin);
    if (eat("{")) {
        while (!at("}")) {
            if (ts() && at_word("type")) {
                const Token next = peek();
                if ((next.type == TokenType::Identifier || next.type == TokenType::String) && !next.is_word("as")) advance();
            }
            Node* s = make(NodeKind::ExportSpecifier, tok_.begin);
            Node* local = tok_.type == TokenType::String ? token_node(NodeKind::Literal) : identifier_name();
            attach(s, Role::Local, local);
            if (eat_word("as")) {
                attach(s, Role::Exported,
                       tok_.type == TokenType::String ? token_node(NodeKind::Literal) : identifier_name());
            } else {
                attach(s, Role::Exported, copy_identifier(local));
            }
            attach(n, Role::Specifiers, finish(s));
            if (!at("}")) expect(",");
        }
        advance();
        if (eat_word("from")) {
            if (tok_.type != TokenType::String) unexpected("expected module specifier");
            attach(n, Role::Source, token_node(NodeKind::Literal));
            if (at_word("with") || (at_word("assert") && !tok_.newline_before)) {
                advance();
                skip_group();
            }
        }
        consume_semicolon();
        return finish(n);
    }
    if (!decos.empty() || at("@")) {
        std::vector<Node*> more = decorators();
        decos.insert(decos.end(), more.begin(), more.end());
        const std::uint32_t class_begin = tok_.begin;
        const bool is_abstract = eat_word("abstract");
        attach(n, Role::Declaration, class_(class_begin, true, std::move(decos), is_abstract));
        return finish(n);
    }
    attach(n, Role::Declaration, statement());
    return finish(n);
}

// ===========================================================================
// Functions and classes
// ===========================================================================

Node* Parser::function(std::uint32_t begin, bool is_async, bool is_statement, bool allow_bodiless) {
    advance();  // function
    const bool is_generator = eat("*");
    Node* fn = make(is_statement ? NodeKind::FunctionDeclaration : NodeKind::FunctionExpression, begin);
    if (is_async) fn->flags |= flag::Async;
    if (is_generator) fn->flags |= flag::Generator;
    if (at_identifier() && !at("(")) {
        const Context saved = ctx_;
        if (!is_statement) ctx_ = Context{true, is_async, is_generator, false};
        attach(fn, Role::Id, binding_identifier());
        ctx_ = saved;
    }
    if (ts() && at("<")) skip_type_parameters();
    const Context saved = ctx_;
    ctx_ = Context{true, is_async, is_generator, false};
    params(fn);
    ctx_ = saved;
    skip_type_annotation();
    if (allow_bodiless && !at("{")) {
        if (!is_statement) unexpected("expected function body");
        fn->kind = NodeKind::TSDeclareFunction;
        consume_semicolon();
        return finish(fn);
    }
    attach(fn, Role::Body, function_body(is_async, is_generator));
    return finish(fn);
}

void Parser::params(Node* fn) {
    expect("(");
    while (!at(")")) {
        attach(fn, Role::Params, param());
        if (!at(")")) expect(",");
    }
    advance();
}

Node* Parser::param() {
    const std::uint32_t begin = tok_.begin;
    std::vector<Node*> decos;
    if (at("@")) decos = decorators();
    bool parameter_property = false;
    if (ts()) {
        for (;;) {
            if (at_word("public") || at_word("private") || at_word("protected") || at_word("readonly") ||
                at_word("override")) {
                const Token next = peek();
                if (next.type == TokenType::Identifier || next.is("{") || next.is("[")) {
                    parameter_property = true;
                    advance();
                    continue;
                }
            }
            break;
        }
    }
    Node* p = nullptr;
    if (at("...")) {
        p = make(NodeKind::RestElement, tok_.begin);
        advance();
        attach(p, Role::Argument, binding_target());
        if (ts()) eat("?");
        skip_type_annotation();
        if (at("=")) {
            advance();
            assignment();
        }
        finish(p);
    } else {
        Node* target = nullptr;
        if (ts() && at_word("this")) {
            target = token_node(NodeKind::Identifier);
        } else {
            target = binding_target();
        }
        if (ts()) eat("?");
        skip_type_annotation();
        if (at("=")) {
            p = make(NodeKind::AssignmentPattern, target->begin);
            attach(p, Role::Left, target);
            advance();
            const Context saved = ctx_;
            ctx_.no_in = false;
            attach(p, Role::Right, assignment());
            ctx_ = saved;
            finish(p);
        } else {
            p = target;
            finish(p);
        }
    }
    if (parameter_property) {
        Node* wrapper = make(NodeKind::TSParameterProperty, begin);
        attach(wrapper, Role::Parameter, p);
        p = finish(wrapper);
    }
    for (Node* d : decos) attach(p, Role::Decorators, d);
    return p;
}

Node* Parser::method_value(bool is_async, bool is_generator, bool allow_bodiless) {
    Node* fn = make(NodeKind::FunctionExpression, tok_.begin);
    if (is_async) fn->flags |= flag::Async;
    if (is_generator) fn->flags |= flag::Generator;
    if (ts() && at("<")) skip_type_parameters();
    const Context saved = ctx_;
    ctx_ = Context{true, is_async, is_generator, false};
    params(fn);
    ctx_ = saved;
    skip_type_annotation();
    if (allow_bodiless && !at("{")) {
        fn->kind = NodeKind::TSEmptyBodyFunctionExpression;
        return finish(fn);
    }
    attach(fn, Role::Body, function_body(is_async, is_generator));
    return finish(fn);
}

std::vector<Node*> Parser::decorators() {
    std::vector<Node*> out;
    while (at("@")) {
        Node* d = make(NodeKind::Decorator, tok_.begin);
        advance();
        Node* e = nullptr;
        if (at("(")) {
            advance();
            e = expression();
            expect(")");
        } else {
            const std::uint32_t begin = tok_.begin;
            e = identifier_name();
            while (at(".")) {
                advance();
                Node* m = make(NodeKind::MemberExpression, begin);
                attach(m, Role::Object, e);
                attach(m, Role::Property, tok_.type == TokenType::PrivateName
                                              ? token_node(NodeKind::PrivateIdentifier)
                                              : identifier_name());
                e = finish(m);
            }
            if (ts() && at("<")) skip_type_arguments();
            if (at("(")) {
                Node* call = make(NodeKind::CallExpression, begin);
                attach(call, Role::Callee, e);
                arguments(call);
                e = finish(call);
            }
        }
        attach(d, Role::Expression, e);
        out.push_back(finish(d));
    }
    return out;
}

Node* Parser::class_(std::uint32_t begin, bool is_statement, std::vector<Node*> decos, bool is_abstract) {
    advance();  // class
    Node* cls = make(is_statement ? NodeKind::ClassDeclaration : NodeKind::ClassExpression, begin);
    for (Node* d : decos) attach(cls, Role::Decorators, d);
    (void)is_abstract;
    if (at_identifier() && !at_word("extends") && !at_word("implements")) {
        attach(cls, Role::Id, binding_identifier());
    }
    if (ts() && at("<")) skip_type_parameters();
    if (eat_word("extends")) {
        attach(cls, Role::SuperClass, left_hand_side());
        if (ts() && at("<")) skip_type_arguments();
    }
    if (ts() && eat_word("implements")) {
        do {
            skip_type();
        } while (eat(","));
    }
    Node* body = make(NodeKind::ClassBody, tok_.begin);
    expect("{");
    const Context saved = ctx_;
    while (!at("}")) {
        if (tok_.type == TokenType::Eof) unexpected("expected '}'");
        if (eat(";")) continue;
        attach(body, Role::Body, class_member());
    }
    ctx_ = saved;
    advance();
    attach(cls, Role::Body, finish(body));
    return finish(cls);
}

Node* Parser::class_member() {
    const std::uint32_t begin = tok_.begin;
    std::vector<Node*> decos;
    if (at("@")) decos = decorators();

    bool is_static = false;
    bool is_abstract = false;
    bool is_async = false;
    bool is_generator = false;
    std::string_view accessor_kind;

    auto next_is_name_position = [&](const Token& next) {
        return next.is("(") || next.is("=") || next.is(";") || next.is("}") || next.is(":") || next.is("?") ||
               next.is("!") || next.is("<") || next.is(",") || next.type == TokenType::Eof;
    };

    for (;;) {
        if (tok_.type != TokenType::Identifier || tok_.escaped) break;
        const std::string_view w = tok_.value;
        const bool ts_modifier = ts() && (w == "public" || w == "private" || w == "protected" || w == "readonly" ||
                                          w == "abstract" || w == "override" || w == "declare");
        if (w != "static" && w != "accessor" && !ts_modifier) break;
        const Token next = peek();
        if (w == "static" && next.is("{")) {
            Node* sb = make(NodeKind::StaticBlock, begin);
            advance();
            const Context saved = ctx_;
            ctx_ = Context{true, false, false, false};
            advance();  // {
            while (!at("}")) {
                if (tok_.type == TokenType::Eof) unexpected("expected '}'");
                attach(sb, Role::Body, statement());
            }
            ctx_ = saved;
            advance();
            return finish(sb);
        }
        if (next_is_name_position(next)) break;
        if (w == "static") is_static = true;
        if (w == "abstract") is_abstract = true;
        advance();
    }
    if (at_word("async")) {
        const Token next = peek();
        if (!next_is_name_position(next) && !next.newline_before) {
            is_async = true;
            advance();
        }
    }
    if (at("*")) {
        is_generator = true;
        advance();
    }
    if ((at_word("get") || at_word("set")) && !is_async && !is_generator) {
        const Token next = peek();
        if (!next_is_name_position(next)) {
            accessor_kind = tok_.value;
            advance();
        }
    }

    // index signature: [key: T]: U;
    if (ts() && at("[")) {
        const State s = save();
        advance();
        if (at_identifier()) {
            advance();
            if (at(":")) {
                restore(s);
                Node* sig = make(NodeKind::TSIndexSignature, begin);
                skip_group();
                skip_type_annotation();
                consume_semicolon();
                return finish(sig);
            }
        }
        restore(s);
    }

    bool computed = false;
    Node* key = nullptr;
    {
        computed = at("[");
        key = property_key(true);
    }
    if (ts()) {
        if (!eat("?")) eat("!");
    }
    if (at("(") || at("<")) {
        NodeKind kind = is_abstract ? NodeKind::TSAbstractMethodDefinition : NodeKind::MethodDefinition;
        Node* m = make(kind, begin);
        for (Node* d : decos) attach(m, Role::Decorators, d);
        if (computed) m->flags |= flag::Computed;
        if (is_static) m->flags |= flag::Static;
        if (!accessor_kind.empty()) {
            m->text = accessor_kind;
        } else if (!computed && !is_static && key->text == "constructor" &&
                   (key->is(NodeKind::Identifier) || key->is(NodeKind::Literal))) {
            m->text = "constructor";
        } else {
            m->text = "method";
        }
        attach(m, Role::Key, key);
        Node* value = method_value(is_async, is_generator, ts());
        attach(m, Role::Value, value);
        if (value->is(NodeKind::TSEmptyBodyFunctionExpression)) consume_semicolon();
        return finish(m);
    }
    if (is_async || is_generator || !accessor_kind.empty()) unexpected("expected method parameters");
    Node* p = make(is_abstract ? NodeKind::TSAbstractPropertyDefinition : NodeKind::PropertyDefinition, begin);
    for (Node* d : decos) attach(p, Role::Decorators, d);
    if (computed) p->flags |= flag::Computed;
    if (is_static) p->flags |= flag::Static;
    attach(p, Role::Key, key);
    skip_type_annotation();
    if (eat("=")) {
        const Context saved = ctx_;
        ctx_ = Context{true, false, false, false};
        attach(p, Role::Value, assignment());
        ctx_ = saved;
    }
    consume_semicolon();
    return finish(p);
}

Node* Parser::property_key(bool allow_private) {
    switch (tok_.type) {
        case TokenType::String: {
            Node* n = token_node(NodeKind::Literal);
            n->flags |= flag::StringLiteral;
            return n;
        }
        case TokenType::Number:
        case TokenType::BigInt:
            return token_node(NodeKind::Literal);
        case TokenType::PrivateName:
            if (!allow_private) unexpected("unexpected private name");
            return token_node(NodeKind::PrivateIdentifier);
        case TokenType::Identifier:
            return token_node(NodeKind::Identifier);
        default:
            break;
    }
    if (at("[")) {
        advance();
        const Context saved = ctx_;
        ctx_.no_in = false;
        Node* e = assignment();
        ctx_ = saved;
        expect("]");
        return e;
    }
    unexpected("expected property name");
}

// ===========================================================================
// Expressions
// ===========================================================================

Node* Parser::expression() {
    const std::uint32_t begin = tok_.begin;
    Node* first = assignment();
    if (!at(",")) return first;
    Node* seq = make(NodeKind::SequenceExpression, begin);
    attach(seq, Role::Expressions, first);
    while (eat(",")) attach(seq, Role::Expressions, assignment());
    return finish(seq);
}

Node* Parser::assignment() {
    if (at_word("yield") && ctx_.in_generator) return yield_expression();
    if (Node* arrow = try_arrow()) return arrow;

    const std::uint32_t begin = tok_.begin;
    Node* left = conditional();
    if (tok_.type == TokenType::Punctuator &&
        std::find(kAssignOps.begin(), kAssignOps.end(), tok_.value) != kAssignOps.end()) {
        const std::string_view op = tok_.value;
        if (op == "=") left = to_pattern(left);
        advance();
        Node* n = make(NodeKind::AssignmentExpression, begin);
        n->text = op;
        attach(n, Role::Left, left);
        attach(n, Role::Right, assignment());
        return finish(n);
    }
    return left;
}

Node* Parser::try_arrow() {
    const std::uint32_t begin = tok_.begin;
    if (at_identifier() && !tok_.escaped && !is_reserved(tok_.value)) {
        const Token next = peek();
        if (next.is("=>") && !next.newline_before) {
            Node* arrow = make(NodeKind::ArrowFunctionExpression, begin);
            attach(arrow, Role::Params, token_node(NodeKind::Identifier));
            return arrow_body(arrow, false);
        }
        if (tok_.value == "async" && !next.newline_before) {
            if (next.type == TokenType::Identifier && !is_reserved(next.value)) {
                const State s = save();
                advance();
                Node* id = token_node(NodeKind::Identifier);
                if (at("=>") && !tok_.newline_before) {
                    Node* arrow = make(NodeKind::ArrowFunctionExpression, begin);
                    arrow->flags |= flag::Async;
                    attach(arrow, Role::Params, id);
                    return arrow_body(arrow, true);
                }
                restore(s);
            } else if ((next.is("(") || (ts() && next.is("<"))) && !failed_arrows_.contains(begin)) {
                const State s = save();
                try {
                    advance();
                    return arrow_from_params(begin, true);
                } catch (const SyntaxError&) {
                    restore(s);
                    failed_arrows_.insert(begin);
                }
            }
        }
        return nullptr;
    }
    if ((at("(") || (ts() && at("<"))) && !failed_arrows_.contains(begin)) {
        const State s = save();
        try {
            return arrow_from_params(begin, false);
        } catch (const SyntaxError&) {
            restore(s);
            failed_arrows_.insert(begin);
        }
    }
    return nullptr;
}

Node* Parser::arrow_from_params(std::uint32_t begin, bool is_async) {
    // Speculative part: type parameters, parameter list, return type, '=>'.
    // A failure anywhere here throws back to try_arrow.
    Node* arrow = make(NodeKind::ArrowFunctionExpression, begin);
    if (is_async) arrow->flags |= flag::Async;
    if (ts() && at("<")) skip_type_parameters();
    const Context saved = ctx_;
    ctx_.in_async = is_async;
    ctx_.no_in = false;
    params(arrow);
    ctx_ = saved;
    if (ts() && at(":")) {
        advance();
        skip_type();
    }
    if (!at("=>") || tok_.newline_before) unexpected("expected '=>'");
    return arrow_body(arrow, is_async);
}

Node* Parser::arrow_body(Node* arrow, bool is_async) {
    advance();  // =>
    if (at("{")) {
        attach(arrow, Role::Body, function_body(is_async, false));
    } else {
        const Context saved = ctx_;
        ctx_.in_function = true;
        ctx_.in_async = is_async;
        ctx_.in_generator = false;
        arrow->flags |= flag::ExpressionBody;
        attach(arrow, Role::Body, assignment());
        ctx_ = saved;
    }
    return finish(arrow);
}

Node* Parser::yield_expression() {
    Node* n = make(NodeKind::YieldExpression, tok_.begin);
    advance();
    if (tok_.newline_before) return finish(n);
    if (eat("*")) {
        n->flags |= flag::Delegate;
        attach(n, Role::Argument, assignment());
        return finish(n);
    }
    if (at(")") || at("]") || at("}") || at(",") || at(";") || at(":") || tok_.type == TokenType::Eof ||
        (at_word("in"))) {
        return finish(n);
    }
    attach(n, Role::Argument, assignment());
    return finish(n);
}

Node* Parser::conditional() {
    const std::uint32_t begin = tok_.begin;
    Node* test = binary(1);
    if (!at("?")) return test;
    advance();
    Node* n = make(NodeKind::ConditionalExpression, begin);
    attach(n, Role::Test, test);
    const Context saved = ctx_;
    ctx_.no_in = false;
    attach(n, Role::Consequent, assignment());
    ctx_ = saved;
    expect(":");
    attach(n, Role::Alternate, assignment());
    return finish(n);
}

int Parser::precedence() const {
    if (tok_.type == TokenType::Punctuator) {
        const std::string_view v = tok_.value;
        if (v == "??") return 1;
        if (v == "||") return 2;
        if (v == "&&") return 3;
        if (v == "|") return 4;
        if (v == "^") return 5;
        if (v == "&") return 6;
        if (v == "==" || v == "!=" || v == "===" || v == "!==") return 7;
        if (v == "<" || v == ">" || v == "<=" || v == ">=") return 8;
        if (v == "<<" || v == ">>" || v == ">>>") return 9;
        if (v == "+" || v == "-") return 10;
        if (v == "*" || v == "/" || v == "%") return 11;
        if (v == "**") return 12;
        return 0;
    }
    if (tok_.type == TokenType::Identifier && !tok_.escaped) {
        if (tok_.value == "instanceof") return 8;
        if (tok_.value == "in" && !ctx_.no_in) return 8;
    }
    return 0;
}

Node* Parser::binary(int min_precedence) {
    const std::uint32_t begin = tok_.begin;
    Node* left = unary();
    for (;;) {
        if (ts() && min_precedence <= 8 && !tok_.newline_before && (at_word("as") || at_word("satisfies"))) {
            Node* n = make(at_word("as") ? NodeKind::TSAsExpression : NodeKind::TSSatisfiesExpression, begin);
            advance();
            if (!eat_word("const")) skip_type();
            attach(n, Role::Expression, left);
            left = finish(n);
            continue;
        }
        const int prec = precedence();
        if (prec == 0 || prec < min_precedence) break;
        const std::string_view op = tok_.value;
        advance();
        Node* right = binary(op == "**" ? prec : prec + 1);
        const bool logical = op == "&&" || op == "||" || op == "??";
        Node* n = make(logical ? NodeKind::LogicalExpression : NodeKind::BinaryExpression, begin);
        n->text = op;
        attach(n, Role::Left, left);
        attach(n, Role::Right, right);
        left = finish(n);
    }
    return left;
}

Node* Parser::unary() {
    const std::uint32_t begin = tok_.begin;
    if (tok_.type == TokenType::Punctuator) {
        if (at("!") || at("~") || at("+") || at("-")) {
            Node* n = make(NodeKind::UnaryExpression, begin);
            n->text = tok_.value;
            n->flags |= flag::Prefix;
            advance();
            attach(n, Role::Argument, unary());
            return finish(n);
        }
        if (at("++") || at("--")) {
            Node* n = make(NodeKind::UpdateExpression, begin);
            n->text = tok_.value;
            n->flags |= flag::Prefix;
            advance();
            attach(n, Role::Argument, unary());
            return finish(n);
        }
        if (at("<") && ts() && !opt_.jsx) {
            Node* n = make(NodeKind::TSTypeAssertion, begin);
            advance();
            if (!eat_word("const")) skip_type();
            expect_greater();
            attach(n, Role::Expression, unary());
            return finish(n);
        }
    } else if (tok_.type == TokenType::Identifier && !tok_.escaped) {
        if (at_word("typeof") || at_word("void") || at_word("delete")) {
            Node* n = make(NodeKind::UnaryExpression, begin);
            n->text = tok_.value;
            n->flags |= flag::Prefix;
            advance();
            attach(n, Role::Argument, unary());
            return finish(n);
        }
        if (at_word("await") && await_allowed()) {
            const Token next = peek();
            const bool operand_follows =
                !(next.is(")") || next.is("]") || next.is("}") || next.is(",") || next.is(";") || next.is(":") ||
                  next.is("=") || next.is("=>") || next.type == TokenType::Eof);
            if (operand_follows || ctx_.in_async) {
                Node* n = make(NodeKind::AwaitExpression, begin);
                advance();
                attach(n, Role::Argument, unary());
                return finish(n);
            }
        }
    }
    return postfix();
}

Node* Parser::postfix() {
    const std::uint32_t begin = tok_.begin;
    Node* e = left_hand_side();
    if ((at("++") || at("--")) && !tok_.newline_before) {
        Node* n = make(NodeKind::UpdateExpression, begin);
        n->text = tok_.value;
        attach(n, Role::Argument, e);
        advance();
        return finish(n);
    }
    return e;
}

Node* Parser::left_hand_side() {
    const std::uint32_t begin = tok_.begin;
    Node* e = nullptr;
    if (at_word("new")) {
        e = new_expression();
    } else if (at_word("super")) {
        e = token_node(NodeKind::Super);
    } else if (at_word("import")) {
        const Token next = peek();
        if (next.is("(")) {
            Node* n = make(NodeKind::ImportExpression, begin);
            advance();
            advance();
            const Context saved = ctx_;
            ctx_.no_in = false;
            attach(n, Role::Source, assignment());
            if (eat(",") && !at(")")) {
                attach(n, Role::Attributes, assignment());
                eat(",");
            }
            ctx_ = saved;
            expect(")");
            e = finish(n);
        } else if (next.is(".")) {
            Node* n = make(NodeKind::MetaProperty, begin);
            attach(n, Role::Meta, token_node(NodeKind::Identifier));
            advance();
            attach(n, Role::Property, identifier_name());
            e = finish(n);
        } else {
            unexpected();
        }
    } else {
        e = primary();
    }
    return call_tail(e, begin, true);
}

Node* Parser::new_expression() {
    const std::uint32_t begin = tok_.begin;
    Node* meta_id = token_node(NodeKind::Identifier);
    if (at(".")) {
        advance();
        Node* n = make(NodeKind::MetaProperty, begin);
        attach(n, Role::Meta, meta_id);
        attach(n, Role::Property, identifier_name());
        return finish(n);
    }
    Node* n = make(NodeKind::NewExpression, begin);
    const std::uint32_t callee_begin = tok_.begin;
    Node* callee = nullptr;
    if (at_word("new")) {
        callee = new_expression();
    } else if (at_word("super")) {
        callee = token_node(NodeKind::Super);
    } else {
        callee = primary();
    }
    callee = call_tail(callee, callee_begin, false);
    attach(n, Role::Callee, callee);
    if (ts() && at("<")) {
        const State s = save();
        try {
            skip_type_arguments();
        } catch (const SyntaxError&) {
            restore(s);
        }
    }
    if (at("(")) arguments(n);
    return finish(n);
}

bool Parser::try_type_arguments_before_call() {
    const State s = save();
    try {
        skip_type_arguments();
        if (at("(") || tok_.type == TokenType::Template) return true;
    } catch (const SyntaxError&) {
    }
    restore(s);
    return false;
}

Node* Parser::call_tail(Node* e, std::uint32_t begin, bool allow_calls) {
    bool in_chain = false;
    for (;;) {
        if (at(".")) {
            advance();
            Node* m = make(NodeKind::MemberExpression, begin);
            attach(m, Role::Object, e);
            attach(m, Role::Property, tok_.type == TokenType::PrivateName ? token_node(NodeKind::PrivateIdentifier)
                                                                            : identifier_name());
            e = finish(m);
        } else if (at("?.") && allow_calls) {
            in_chain = true;
            advance();
            if (ts() && at("<")) skip_type_arguments();
            if (at("(")) {
                Node* c = make(NodeKind::CallExpression, begin);
                c->flags |= flag::Optional;
                attach(c, Role::Callee, e);
                arguments(c);
                e = finish(c);
            } else if (at("[")) {
                advance();
                Node* m = make(NodeKind::MemberExpression, begin);
                m->flags |= flag::Optional | flag::Computed;
                attach(m, Role::Object, e);
                const Context saved = ctx_;
                ctx_.no_in = false;
                attach(m, Role::Property, expression());
                ctx_ = saved;
                expect("]");
                e = finish(m);
            } else {
                Node* m = make(NodeKind::MemberExpression, begin);
                m->flags |= flag::Optional;
                attach(m, Role::Object, e);
                attach(m, Role::Property, tok_.type == TokenType::PrivateName
                                              ? token_node(NodeKind::PrivateIdentifier)
                                              : identifier_name());
                e = finish(m);
            }
        } else if (at("[")) {
            advance();
            Node* m = make(NodeKind::MemberExpression, begin);
            m->flags |= flag::Computed;
            attach(m, Role::Object, e);
            const Context saved = ctx_;
            ctx_.no_in = false;
            attach(m, Role::Property, expression());
            ctx_ = saved;
            expect("]");
            e = finish(m);
        } else if (at("(") && allow_calls) {
            Node* c = make(NodeKind::CallExpression, begin);
            attach(c, Role::Callee, e);
            arguments(c);
            e = finish(c);
        } else if (tok_.type == TokenType::Template) {
            if (in_chain) unexpected("tagged template in optional chain");
            Node* t = make(NodeKind::TaggedTemplateExpression, begin);
            attach(t, Role::Tag, e);
            attach(t, Role::Quasi, template_literal());
            e = finish(t);
        } else if (ts() && at("!") && !tok_.newline_before) {
            Node* n = make(NodeKind::TSNonNullExpression, begin);
            attach(n, Role::Expression, e);
            advance();
            e = finish(n);
        } else if (ts() && (at("<") || at("<<")) && allow_calls && at("<") && try_type_arguments_before_call()) {
            // type arguments consumed; the call or tagged template follows
            continue;
        } else {
            break;
        }
    }
    if (in_chain) {
        Node* chain = make(NodeKind::ChainExpression, begin);
        attach(chain, Role::Expression, e);
        chain->end = e->end;
        return chain;
    }
    return e;
}

void Parser::arguments(Node* call) {
    expect("(");
    const Context saved = ctx_;
    ctx_.no_in = false;
    while (!at(")")) {
        if (at("...")) {
            Node* s = make(NodeKind::SpreadElement, tok_.begin);
            advance();
            attach(s, Role::Argument, assignment());
            attach(call, Role::Arguments, finish(s));
        } else {
            attach(call, Role::Arguments, assignment());
        }
        if (!at(")")) expect(",");
    }
    ctx_ = saved;
    advance();
}

Node* Parser::primary() {
    const std::uint32_t begin = tok_.begin;
    switch (tok_.type) {
        case TokenType::Number:
        case TokenType::BigInt:
            return token_node(NodeKind::Literal);
        case TokenType::String: {
            Node* n = token_node(NodeKind::Literal);
            n->flags |= flag::StringLiteral;
            return n;
        }
        case TokenType::Template:
            return template_literal();
        case TokenType::PrivateName: {
            Node* n = token_node(NodeKind::PrivateIdentifier);
            if (!at_word("in")) unexpected("unexpected private name");
            return n;
        }
        case TokenType::Eof:
            unexpected("unexpected end of input");
        case TokenType::Identifier:
            break;
        default:
            break;
    }
    if (tok_.type == TokenType::Punctuator) {
        if (at("/") || at("/=")) {
            tok_ = lex_.rescan_regex(tok_);
            return token_node(NodeKind::Literal);
        }
        if (at("(")) {
            advance();
            const Context saved = ctx_;
            ctx_.no_in = false;
            Node* e = expression();
            ctx_ = saved;
            expect(")");
            return e;
        }
        if (at("[")) return array_literal();
        if (at("{")) return object_literal();
        if (at("<") && opt_.jsx) return jsx_element(false);
        if (at("@")) {
            std::vector<Node*> decos = decorators();
            if (!at_word("class")) unexpected("expected class after decorators");
            return class_(begin, false, std::move(decos), false);
        }
        unexpected();
    }

    const std::string_view w = tok_.value;
    if (!tok_.escaped) {
        if (w == "this") return token_node(NodeKind::ThisExpression);
        if (w == "null" || w == "true" || w == "false") return token_node(NodeKind::Literal);
        if (w == "function") return function(begin, false, false, false);
        if (w == "class") return class_(begin, false, {}, false);
        if (w == "async") {
            const Token next = peek();
            if (next.is_word("function") && !next.newline_before) {
                advance();
                return function(begin, true, false, false);
            }
        }
        if (w == "new") return new_expression();
    }
    if (is_reserved(w) && !tok_.escaped) unexpected("unexpected keyword");
    return token_node(NodeKind::Identifier);
}

Node* Parser::array_literal() {
    Node* n = make(NodeKind::ArrayExpression, tok_.begin);
    advance();
    const Context saved = ctx_;
    ctx_.no_in = false;
    while (!at("]")) {
        if (at(",")) {
            advance();  // hole
            continue;
        }
        if (at("...")) {
            Node* s = make(NodeKind::SpreadElement, tok_.begin);
            advance();
            attach(s, Role::Argument, assignment());
            attach(n, Role::Elements, finish(s));
        } else {
            attach(n, Role::Elements, assignment());
        }
        if (!at("]")) expect(",");
    }
    ctx_ = saved;
    advance();
    return finish(n);
}

Node* Parser::object_literal() {
    Node* n = make(NodeKind::ObjectExpression, tok_.begin);
    advance();
    const Context saved = ctx_;
    ctx_.no_in = false;
    while (!at("}")) {
        if (at("...")) {
            Node* s = make(NodeKind::SpreadElement, tok_.begin);
            advance();
            attach(s, Role::Argument, assignment());
            attach(n, Role::Properties, finish(s));
        } else {
            attach(n, Role::Properties, object_member());
        }
        if (!at("}")) expect(",");
    }
    ctx_ = saved;
    advance();
    return finish(n);
}

Node* Parser::object_member() {
    const std::uint32_t begin = tok_.begin;
    bool is_async = false;
    bool is_generator = false;
    std::string_view accessor_kind;
    auto plain_name_follows = [](const Token& next) {
        return next.is(",") || next.is(":") || next.is("(") || next.is("}") || next.is("=") || next.is("<");
    };
    if (at_word("async")) {
        const Token next = peek();
        if (!plain_name_follows(next) && !next.newline_before) {
            is_async = true;
            advance();
        }
    }
    if (at("*")) {
        is_generator = true;
        advance();
    }
    if (!is_async && !is_generator && (at_word("get") || at_word("set"))) {
        const Token next = peek();
        if (!plain_name_follows(next)) {
            accessor_kind = tok_.value;
            advance();
        }
    }
    Node* p = make(NodeKind::Property, begin);
    const bool computed = at("[");
    const bool key_is_identifier = tok_.type == TokenType::Identifier;
    Node* key = property_key(false);
    if (computed) p->flags |= flag::Computed;
    attach(p, Role::Key, key);
    if (at("(") || at("<")) {
        p->text = accessor_kind.empty() ? "init" : accessor_kind;
        if (accessor_kind.empty()) p->flags |= flag::Method;
        attach(p, Role::Value, method_value(is_async, is_generator, false));
        return finish(p);
    }
    if (is_async || is_generator || !accessor_kind.empty()) unexpected("expected method parameters");
    p->text = "init";
    if (eat(":")) {
        attach(p, Role::Value, assignment());
        return finish(p);
    }
    if (!key_is_identifier || computed) unexpected("expected ':'");
    if (is_reserved(key->text) && !at("=")) unexpected("unexpected keyword in shorthand property");
    p->flags |= flag::Shorthand;
    Node* value = copy_identifier(key);
    if (at("=")) {
        // cover grammar: only valid once the object becomes a pattern
        Node* ap = make(NodeKind::AssignmentPattern, value->begin);
        attach(ap, Role::Left, value);
        advance();
        attach(ap, Role::Right, assignment());
        value = finish(ap);
    }
    attach(p, Role::Value, value);
    return finish(p);
}

Node* Parser::template_literal() {
    Node* lit = make(NodeKind::TemplateLiteral, tok_.begin);
    for (;;) {
        if (tok_.type != TokenType::Template) unexpected("expected template continuation");
        const Token chunk = tok_;
        Node* el = make(NodeKind::TemplateElement, chunk.begin);
        el->end = chunk.end;
        el->text = chunk.value;
        attach(lit, Role::Quasis, el);
        advance();
        if (chunk.template_tail) break;
        const Context saved = ctx_;
        ctx_.no_in = false;
        attach(lit, Role::Expressions, expression());
        ctx_ = saved;
        if (!at("}")) unexpected("expected '}' in template");
        tok_ = lex_.rescan_template_continuation(tok_);
    }
    return finish(lit);
}

Node* Parser::to_pattern(Node* node) {
    switch (node->kind) {
        case NodeKind::Identifier:
        case NodeKind::MemberExpression:
        case NodeKind::AssignmentPattern:
        case NodeKind::ObjectPattern:
        case NodeKind::ArrayPattern:
        case NodeKind::RestElement:
        case NodeKind::TSAsExpression:
        case NodeKind::TSSatisfiesExpression:
        case NodeKind::TSNonNullExpression:
        case NodeKind::TSTypeAssertion:
            return node;
        case NodeKind::ArrayExpression:
            node->kind = NodeKind::ArrayPattern;
            for (Edge& e : node->edges) {
                if (e.node->is(NodeKind::SpreadElement)) {
                    e.node->kind = NodeKind::RestElement;
                    e.node->edges.front().node = to_pattern(e.node->edges.front().node);
                } else {
                    e.node = to_pattern(e.node);
                }
                e.node->parent = node;
            }
            return node;
        case NodeKind::ObjectExpression:
            node->kind = NodeKind::ObjectPattern;
            for (Edge& e : node->edges) {
                Node* prop = e.node;
                if (prop->is(NodeKind::SpreadElement)) {
                    prop->kind = NodeKind::RestElement;
                    prop->edges.front().node = to_pattern(prop->edges.front().node);
                    continue;
                }
                if (prop->has(flag::Method) || prop->text == "get" || prop->text == "set") {
                    throw SyntaxError("invalid destructuring target", prop->begin);
                }
                for (Edge& pe : prop->edges) {
                    if (pe.role == Role::Value) {
                        pe.node = to_pattern(pe.node);
                        pe.node->parent = prop;
                    }
                }
            }
            return node;
        case NodeKind::AssignmentExpression:
            if (node->text != "=") break;
            node->kind = NodeKind::AssignmentPattern;
            node->text = {};
            for (Edge& e : node->edges) {
                if (e.role == Role::Left) {
                    e.node = to_pattern(e.node);
                    e.node->parent = node;
                }
            }
            return node;
        default:
            break;
    }
    throw SyntaxError("invalid assignment target", node->begin);
}

// ===========================================================================
// Binding patterns
// ===========================================================================

Node* Parser::binding_identifier() {
    if (!at_identifier()) unexpected("expected identifier");
    if (!tok_.escaped && is_reserved(tok_.value)) unexpected("unexpected keyword");
    if (!tok_.escaped && tok_.value == "await" && ctx_.in_async) unexpected("unexpected await");
    return token_node(NodeKind::Identifier);
}

Node* Parser::identifier_name() {
    if (!at_identifier()) unexpected("expected identifier");
    return token_node(NodeKind::Identifier);
}

Node* Parser::binding_target() {
    if (at("[")) {
        Node* n = make(NodeKind::ArrayPattern, tok_.begin);
        advance();
        while (!at("]")) {
            if (at(",")) {
                advance();
                continue;
            }
            if (at("...")) {
                Node* r = make(NodeKind::RestElement, tok_.begin);
                advance();
                attach(r, Role::Argument, binding_target());
                attach(n, Role::Elements, finish(r));
            } else {
                attach(n, Role::Elements, binding_element());
            }
            if (!at("]")) expect(",");
        }
        advance();
        return finish(n);
    }
    if (at("{")) {
        Node* n = make(NodeKind::ObjectPattern, tok_.begin);
        advance();
        while (!at("}")) {
            if (at("...")) {
                Node* r = make(NodeKind::RestElement, tok_.begin);
                advance();
                attach(r, Role::Argument, binding_target());
                attach(n, Role::Properties, finish(r));
            } else {
                Node* p = make(NodeKind::Property, tok_.begin);
                p->text = "init";
                const bool computed = at("[");
                const bool key_is_identifier = at_identifier();
                Node* key = property_key(false);
                if (computed) p->flags |= flag::Computed;
                attach(p, Role::Key, key);
                if (eat(":")) {
                    attach(p, Role::Value, binding_element());
                } else {
                    if (!key_is_identifier || computed || is_reserved(key->text)) unexpected("expected ':'");
                    p->flags |= flag::Shorthand;
                    Node* value = copy_identifier(key);
                    if (at("=")) {
                        Node* ap = make(NodeKind::AssignmentPattern, value->begin);
                        attach(ap, Role::Left, value);
                        advance();
                        attach(ap, Role::Right, assignment());
                        value = finish(ap);
                    }
                    attach(p, Role::Value, value);
                }
                attach(n, Role::Properties, finish(p));
            }
            if (!at("}")) expect(",");
        }
        advance();
        return finish(n);
    }
    return binding_identifier();
}

Node* Parser::binding_element() {
    Node* target = binding_target();
    if (!at("=")) return target;
    Node* ap = make(NodeKind::AssignmentPattern, target->begin);
    attach(ap, Role::Left, target);
    advance();
    const Context saved = ctx_;
    ctx_.no_in = false;
    attach(ap, Role::Right, assignment());
    ctx_ = saved;
    return finish(ap);
}

// ===========================================================================
// JSX
// ===========================================================================

void Parser::jsx_close(bool nested) {
    // tok_ is the '>' that ends a tag; what follows is child text when nested.
    if (!at(">")) {
        if (tok_.type == TokenType::Punctuator && !tok_.value.empty() && tok_.value.front() == '>') {
            tok_ = lex_.split_leading(tok_, 1);
        } else {
            unexpected("expected '>'");
        }
    }
    if (nested) {
        prev_end_ = tok_.end;
        tok_ = lex_.scan_jsx_text(tok_.end);
    } else {
        advance();
    }
}

Node* Parser::jsx_element_name() {
    if (!at_identifier()) unexpected("expected JSX tag name");
    tok_ = lex_.rescan_jsx_identifier(tok_);
    const std::uint32_t begin = tok_.begin;
    Node* name = token_node(NodeKind::JSXIdentifier);
    if (at(":")) {
        advance();
        Node* ns = make(NodeKind::JSXNamespacedName, begin);
        attach(ns, Role::Namespace, name);
        if (!at_identifier()) unexpected("expected JSX name");
        tok_ = lex_.rescan_jsx_identifier(tok_);
        attach(ns, Role::Name, token_node(NodeKind::JSXIdentifier));
        return finish(ns);
    }
    while (at(".")) {
        advance();
        Node* m = make(NodeKind::JSXMemberExpression, begin);
        attach(m, Role::Object, name);
        if (!at_identifier()) unexpected("expected JSX name");
        tok_ = lex_.rescan_jsx_identifier(tok_);
        attach(m, Role::Property, token_node(NodeKind::JSXIdentifier));
        name = finish(m);
    }
    return name;
}

Node* Parser::jsx_attribute() {
    const std::uint32_t begin = tok_.begin;
    if (at("{")) {
        Node* s = make(NodeKind::JSXSpreadAttribute, begin);
        advance();
        expect("...");
        attach(s, Role::Argument, assignment());
        expect("}");
        return finish(s);
    }
    Node* a = make(NodeKind::JSXAttribute, begin);
    if (!at_identifier()) unexpected("expected JSX attribute");
    tok_ = lex_.rescan_jsx_identifier(tok_);
    Node* name = token_node(NodeKind::JSXIdentifier);
    if (at(":")) {
        advance();
        Node* ns = make(NodeKind::JSXNamespacedName, begin);
        attach(ns, Role::Namespace, name);
        tok_ = lex_.rescan_jsx_identifier(tok_);
        attach(ns, Role::Name, token_node(NodeKind::JSXIdentifier));
        name = finish(ns);
    }
    attach(a, Role::Name, name);
    if (at("=")) {
        prev_end_ = tok_.end;
        tok_ = lex_.scan_jsx_attribute_value(tok_.end);
        if (tok_.type == TokenType::String) {
            Node* lit = token_node(NodeKind::Literal);
            lit->flags |= flag::StringLiteral;
            attach(a, Role::Value, lit);
        } else if (at("{")) {
            Node* c = make(NodeKind::JSXExpressionContainer, tok_.begin);
            advance();
            attach(c, Role::Expression, assignment());
            expect("}");
            attach(a, Role::Value, finish(c));
        } else if (at("<")) {
            attach(a, Role::Value, jsx_element(false));
        } else {
            unexpected("expected JSX attribute value");
        }
    }
    return finish(a);
}

Node* Parser::jsx_element(bool nested) {
    const std::uint32_t begin = tok_.begin;
    advance();  // <
    if (at(">")) {
        Node* frag = make(NodeKind::JSXFragment, begin);
        Node* open = make(NodeKind::JSXOpeningFragment, begin);
        open->end = tok_.end;
        attach(frag, Role::OpeningElement, open);
        prev_end_ = tok_.end;
        tok_ = lex_.scan_jsx_text(tok_.end);
        jsx_children(frag);
        // tok_ is '<' of '</>'
        Node* close = make(NodeKind::JSXClosingFragment, tok_.begin);
        advance();
        expect("/");
        if (!at(">")) unexpected("expected '>'");
        close->end = tok_.end;
        attach(frag, Role::ClosingElement, close);
        frag->end = tok_.end;
        jsx_close(nested);
        return frag;
    }
    Node* el = make(NodeKind::JSXElement, begin);
    Node* open = make(NodeKind::JSXOpeningElement, begin);
    attach(open, Role::Name, jsx_element_name());
    if (ts() && at("<")) skip_type_arguments();
    while (!at("/") && !at(">") && !(tok_.type == TokenType::Punctuator && tok_.value.front() == '>')) {
        if (tok_.type == TokenType::Eof) unexpected("unterminated JSX tag");
        attach(open, Role::Attributes, jsx_attribute());
    }
    attach(el, Role::OpeningElement, open);
    if (eat("/")) {
        open->end = tok_.end;
        el->end = tok_.end;
        jsx_close(nested);
        return el;
    }
    if (!at(">")) tok_ = lex_.split_leading(tok_, 1);
    open->end = tok_.end;
    prev_end_ = tok_.end;
    tok_ = lex_.scan_jsx_text(tok_.end);
    jsx_children(el);
    Node* close = make(NodeKind::JSXClosingElement, tok_.begin);
    advance();  // <
    expect("/");
    attach(close, Role::Name, jsx_element_name());
    if (!at(">")) {
        if (tok_.type == TokenType::Punctuator && tok_.value.front() == '>') {
            tok_ = lex_.split_leading(tok_, 1);
        } else {
            unexpected("expected '>'");
        }
    }
    close->end = tok_.end;
    attach(el, Role::ClosingElement, close);
    el->end = tok_.end;
    jsx_close(nested);
    return el;
}

void Parser::jsx_children(Node* element) {
    for (;;) {
        if (tok_.type == TokenType::JSXText) {
            Node* t = make(NodeKind::JSXText, tok_.begin);
            t->end = tok_.end;
            t->text = tok_.value;
            attach(element, Role::Children, t);
            prev_end_ = tok_.end;
            tok_ = lex_.scan_jsx_text(tok_.end);
        } else if (at("{")) {
            const std::uint32_t begin = tok_.begin;
            const std::uint32_t inner = tok_.end;
            advance();
            Node* c = nullptr;
            if (at("}")) {
                c = make(NodeKind::JSXExpressionContainer, begin);
                Node* empty = make(NodeKind::JSXEmptyExpression, inner);
                empty->end = tok_.begin;
                attach(c, Role::Expression, empty);
            } else if (at("...")) {
                c = make(NodeKind::JSXSpreadChild, begin);
                advance();
                attach(c, Role::Expression, expression());
            } else {
                c = make(NodeKind::JSXExpressionContainer, begin);
                attach(c, Role::Expression, expression());
            }
            if (!at("}")) unexpected("expected '}'");
            c->end = tok_.end;
            attach(element, Role::Children, c);
            prev_end_ = tok_.end;
            tok_ = lex_.scan_jsx_text(tok_.end);
        } else if (at("<")) {
            const Token next = peek();
            if (next.is("/")) return;
            attach(element, Role::Children, jsx_element(true));
        } else {
            unexpected("unterminated JSX element");
        }
    }
}

// ===========================================================================
// TypeScript: declarations and type skipping
// ===========================================================================

void Parser::expect_greater() {
    if (at(">")) {
        advance();
        return;
    }
    if (tok_.type == TokenType::Punctuator && !tok_.value.empty() && tok_.value.front() == '>') {
        tok_ = lex_.split_leading(tok_, 1);
        advance();
        return;
    }
    unexpected("expected '>'");
}

void Parser::skip_template() {
    // tok_ is a template head or a complete no-substitution template
    for (;;) {
        const bool tail = tok_.template_tail;
        advance();
        if (tail) return;
        while (!at("}")) {
            if (tok_.type == TokenType::Eof) unexpected("unterminated template");
            if (at("(") || at("[") || at("{")) {
                skip_group();
            } else if (tok_.type == TokenType::Template) {
                skip_template();
            } else {
                advance();
            }
        }
        tok_ = lex_.rescan_template_continuation(tok_);
    }
}

void Parser::skip_group() {
    const std::string_view close = at("(") ? ")" : at("[") ? "]" : "}";
    advance();
    while (!at(close)) {
        if (tok_.type == TokenType::Eof) unexpected("unbalanced brackets");
        if (at("(") || at("[") || at("{")) {
            skip_group();
        } else if (tok_.type == TokenType::Template) {
            skip_template();
        } else {
            advance();
        }
    }
    advance();
}

void Parser::skip_type_arguments() {
    expect("<");
    while (!at(">")) {
        skip_type();
        if (!eat(",")) break;
    }
    expect_greater();
}

void Parser::skip_type_parameters() {
    expect("<");
    while (!at(">")) {
        while (at_word("const") || at_word("in") || at_word("out")) {
            const Token next = peek();
            if (next.type != TokenType::Identifier) break;
            advance();
        }
        identifier_name();
        if (eat_word("extends")) skip_type();
        if (eat("=")) skip_type();
        if (!eat(",")) break;
    }
    expect_greater();
}

void Parser::skip_type() {
    if (at("<")) {
        skip_type_parameters();
        skip_group();
        expect("=>");
        skip_type();
        return;
    }
    if (at_word("new") || (at_word("abstract") && peek().is_word("new"))) {
        if (at_word("abstract")) advance();
        advance();
        if (at("<")) skip_type_parameters();
        skip_group();
        expect("=>");
        skip_type();
        return;
    }
    skip_union();
    if (at_word("extends") && !tok_.newline_before) {
        advance();
        skip_union();
        expect("?");
        skip_type();
        expect(":");
        skip_type();
    }
}

void Parser::skip_union() {
    eat("|");
    skip_intersection();
    while (eat("|")) skip_intersection();
}

void Parser::skip_intersection() {
    eat("&");
    skip_type_operator();
    while (eat("&")) skip_type_operator();
}

void Parser::skip_type_operator() {
    if ((at_word("keyof") || at_word("unique") || at_word("readonly")) && !peek().newline_before) {
        const Token next = peek();
        if (next.type == TokenType::Identifier || next.is("(") || next.is("[") || next.is("{")) {
            advance();
            skip_type_operator();
            return;
        }
    }
    if (at_word("infer")) {
        advance();
        identifier_name();
        return;
    }
    skip_postfix_type();
}

void Parser::skip_postfix_type() {
    skip_primary_type();
    while (at("[") && !tok_.newline_before) skip_group();
}

void Parser::skip_primary_type() {
    switch (tok_.type) {
        case TokenType::String:
        case TokenType::Number:
        case TokenType::BigInt:
            advance();
            return;
        case TokenType::Template:
            skip_template();
            return;
        case TokenType::Punctuator:
            if (at("(")) {
                skip_group();
                if (at("=>")) {
                    advance();
                    skip_type();
                }
                return;
            }
            if (at("{") || at("[")) {
                skip_group();
                return;
            }
            if (at("-")) {
                advance();
                if (tok_.type != TokenType::Number && tok_.type != TokenType::BigInt) unexpected("expected number");
                advance();
                return;
            }
            if (at("<")) {
                skip_type();
                return;
            }
            unexpected("expected type");
        case TokenType::Identifier:
            break;
        default:
            unexpected("expected type");
    }
    if (at_word("typeof")) {
        advance();
        if (at_word("import")) {
            advance();
            skip_group();
        } else {
            identifier_name();
        }
        while (eat(".")) identifier_name();
        if (at("<") && !tok_.newline_before) skip_type_arguments();
        return;
    }
    if (at_word("import")) {
        advance();
        skip_group();
        while (eat(".")) identifier_name();
        if (at("<")) skip_type_arguments();
        return;
    }
    if (at_word("asserts")) {
        const Token next = peek();
        if (next.type == TokenType::Identifier && !next.newline_before) {
            advance();
            advance();
            if (eat_word("is")) skip_type();
            return;
        }
    }
    if (at_word("function") || at_word("class")) unexpected("expected type");
    advance();
    while (at(".")) {
        advance();
        identifier_name();
    }
    if (at("<") && !tok_.newline_before) skip_type_arguments();
    if (at_word("is") && !tok_.newline_before) {
        advance();
        skip_type();
    }
}

bool Parser::ts_declaration_start() {
    const std::string_view w = tok_.value;
    if (w != "interface" && w != "type" && w != "enum" && w != "declare" && w != "namespace" && w != "module" &&
        w != "abstract" && w != "global") {
        return false;
    }
    const Token next = peek();
    if (next.newline_before) return false;
    if (w == "abstract") return next.is_word("class");
    if (w == "module") return next.type == TokenType::Identifier || next.type == TokenType::String;
    if (w == "global") return next.is("{");
    if (w == "declare") return next.type == TokenType::Identifier;
    return next.type == TokenType::Identifier;
}

Node* Parser::ts_module(std::uint32_t begin) {
    Node* n = make(NodeKind::TSModuleDeclaration, begin);
    if (at_word("global")) {
        attach(n, Role::Id, identifier_name());
    } else {
        advance();  // namespace | module
        if (tok_.type == TokenType::String) {
            attach(n, Role::Id, token_node(NodeKind::Literal));
        } else {
            const std::uint32_t id_begin = tok_.begin;
            Node* id = identifier_name();
            while (at(".")) {
                advance();
                Node* m = make(NodeKind::MemberExpression, id_begin);
                attach(m, Role::Object, id);
                attach(m, Role::Property, identifier_name());
                id = finish(m);
            }
            attach(n, Role::Id, id);
        }
    }
    if (!at("{")) {
        consume_semicolon();
        return finish(n);
    }
    Node* body = make(NodeKind::TSModuleBlock, tok_.begin);
    advance();
    while (!at("}")) {
        if (tok_.type == TokenType::Eof) unexpected("expected '}'");
        attach(body, Role::Body, statement());
    }
    advance();
    attach(n, Role::Body, finish(body));
    return finish(n);
}

Node* Parser::ts_import_equals(std::uint32_t begin) {
    Node* n = make(NodeKind::TSImportEqualsDeclaration, begin);
    expect("=");
    if (at_word("require") && peek().is("(")) {
        advance();
        skip_group();
    } else {
        identifier_name();
        while (eat(".")) identifier_name();
    }
    consume_semicolon();
    return finish(n);
}

Node* Parser::ts_declaration() {
    const std::uint32_t begin = tok_.begin;
    const std::string_view w = tok_.value;
    if (w == "declare") {
        advance();
        Node* inner = nullptr;
        if (at_word("var") || at_word("let") || at_word("const")) {
            if (at_word("const") && peek().is_word("enum")) {
                advance();
                inner = ts_declaration();
            } else {
                inner = variable_declaration(tok_.begin, true);
            }
        } else if (at_word("function")) {
            inner = function(tok_.begin, false, true, true);
        } else if (at_word("async")) {
            advance();
            inner = function(tok_.begin, true, true, true);
        } else if (at_word("class")) {
            inner = class_(tok_.begin, true, {}, false);
        } else {
            inner = ts_declaration();
        }
        inner->flags |= flag::Declare;
        inner->begin = begin;
        return inner;
    }
    if (w == "abstract") {
        advance();
        return class_(begin, true, {}, true);
    }
    if (w == "namespace" || w == "module" || w == "global") return ts_module(begin);
    if (w == "interface") {
        Node* n = make(NodeKind::TSInterfaceDeclaration, begin);
        advance();
        attach(n, Role::Id, identifier_name());
        if (at("<")) skip_type_parameters();
        if (eat_word("extends")) {
            do {
                skip_type();
            } while (eat(","));
        }
        if (!at("{")) unexpected("expected interface body");
        skip_group();
        return finish(n);
    }
    if (w == "type") {
        Node* n = make(NodeKind::TSTypeAliasDeclaration, begin);
        advance();
        attach(n, Role::Id, identifier_name());
        if (at("<")) skip_type_parameters();
        expect("=");
        skip_type();
        consume_semicolon();
        return finish(n);
    }
    if (w == "enum") {
        Node* n = make(NodeKind::TSEnumDeclaration, begin);
        advance();
        attach(n, Role::Id, identifier_name());
        if (!at("{")) unexpected("expected enum body");
        skip_group();
        return finish(n);
    }
    unexpected("unexpected declaration");
}

}  // namespace

ParseOptions options_for_path(std::string_view path) {
    std::string lower(path);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    auto ends_with = [&](std::string_view suffix) {
        return lower.size() >= suffix.size() && lower.compare(lower.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    ParseOptions o;
    if (ends_with(".ts") || ends_with(".mts") || ends_with(".cts")) {
        o.typescript = true;
        o.jsx = false;
    } else if (ends_with(".tsx")) {
        o.typescript = true;
        o.jsx = true;
    }
    return o;
}

std::unique_ptr<Ast> parse_program(std::string source, const ParseOptions& options) {
    auto ast = std::make_unique<Ast>(std::move(source));
    Parser parser(*ast, options);
    ast->set_root(parser.program());
    return ast;
}

std::unique_ptr<Ast> parse_expression(std::string source, const ParseOptions& options) {
    auto ast = std::make_unique<Ast>(std::move(source));
    Parser parser(*ast, options);
    ast->set_root(parser.standalone_expression());
    return ast;
}

}  // namespace adhoc::js
