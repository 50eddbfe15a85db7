#pragma once

#include "adhoc/js/ast.hpp"
#include "adhoc/js/lexer.hpp"

#include <memory>
#include <string>
#include <string_view>

namespace adhoc::js {

struct ParseOptions {
    bool typescript = false;  // accept and discard type syntax
    bool jsx = true;
};

// .ts parses without JSX (angle-bracket assertions), .tsx with both, every
// other extension as JavaScript with JSX.
ParseOptions options_for_path(std::string_view path);

// Parses a whole module. Throws SyntaxError.
std::unique_ptr<Ast> parse_program(std::string source, const ParseOptions& options = {});

// Parses a single expression; the root is the expression node itself.
std::unique_ptr<Ast> parse_expression(std::string source, const ParseOptions& options = {});

}  // namespace adhoc::js
