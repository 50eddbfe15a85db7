#pragma once

#include "adhoc/js/ast.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace adhoc::js {

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(const std::string& message, std::uint32_t offset)
        : std::runtime_error(message), offset_(offset) {}
    std::uint32_t offset() const { return offset_; }

private:
    std::uint32_t offset_;
};

enum class TokenType : std::uint8_t {
    Eof,
    Identifier,   // includes keywords; the parser decides from context
    PrivateName,  // #name
    Punctuator,
    Number,
    BigInt,
    String,
    Template,
    Regex,
    JSXText,
};

struct Token {
    TokenType type = TokenType::Eof;
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    // Punctuators, numbers, regexes: raw text. Identifiers and strings: the
    // cooked value (escapes resolved). Templates: raw text between the
    // delimiters.
    std::string_view value;
    bool newline_before = false;
    bool escaped = false;        // identifier spelled with unicode escapes
    bool template_tail = false;  // template chunk ends with a backtick

    bool is(std::string_view punct) const {
        return type == TokenType::Punctuator && value == punct;
    }
    bool is_word(std::string_view word) const {
        return type == TokenType::Identifier && !escaped && value == word;
    }
};

// On-demand scanner. Context-dependent tokens (regular expressions, template
// continuations, JSX text and names) are produced by explicit rescans that the
// parser requests once it knows which grammar applies.
class Lexer {
public:
    Lexer(std::string_view source, Ast& ast);

    Token next();

    Token rescan_regex(const Token& slash);
    Token rescan_template_continuation(const Token& rbrace);
    Token rescan_jsx_identifier(const Token& ident);
    Token scan_jsx_text(std::uint32_t from);
    Token scan_jsx_attribute_string(const Token& quote_token);
    // Attribute value after '=': a JSX string (no escapes) or an ordinary token.
    Token scan_jsx_attribute_value(std::uint32_t from);
    // Splits a compound punctuator starting with '>' (">>", ">=", ...) so a
    // type-argument list can close on its first character.
    Token split_leading(const Token& tok, std::size_t length);

    std::uint32_t position() const { return pos_; }
    void reset(std::uint32_t pos) { pos_ = pos; }

private:
    bool at_end() const { return pos_ >= src_.size(); }
    unsigned char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? static_cast<unsigned char>(src_[pos_ + ahead]) : 0;
    }
    bool skip_trivia();  // returns true when a line terminator was crossed
    Token scan_identifier(std::uint32_t begin, bool private_name);
    Token scan_number(std::uint32_t begin);
    Token scan_string(std::uint32_t begin, char quote);
    Token scan_template(std::uint32_t begin);
    Token scan_punctuator(std::uint32_t begin);
    char32_t read_unicode_escape();
    char32_t decode_at(std::size_t at, std::size_t& length) const;
    [[noreturn]] void fail(const std::string& message, std::uint32_t at) const;

    std::string_view src_;
    Ast& ast_;
    std::uint32_t pos_ = 0;
};

bool is_id_start(char32_t c);
bool is_id_part(char32_t c);
void append_utf8(std::string& out, char32_t cp);

}  // namespace adhoc::js
