#include "adhoc/js/lexer.hpp"

#include <array>

namespace adhoc::js {

namespace {

bool is_unicode_space(char32_t c) {
    return c == 0xA0 || c == 0xFEFF || c == 0x1680 || (c >= 0x2000 && c <= 0x200A) || c == 0x202F ||
           c == 0x205F || c == 0x3000;
}

bool is_line_terminator(char32_t c) { return c == '\n' || c == '\r' || c == 0x2028 || c == 0x2029; }

bool is_decimal(unsigned char c) { return c >= '0' && c <= '9'; }

int hex_value(unsigned char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

// Longest-match punctuator table, longest entries first.
constexpr std::array<std::string_view, 52> kPunctuators = {
    ">>>=", "...", "===", "!==", "**=", "<<=", ">>=", ">>>", "&&=", "||=", "?\?=",
    "=>",   "==",  "!=",  "<=",  ">=",  "&&",  "||",  "??",  "?.",  "++",  "--",
    "+=",   "-=",  "*=",  "/=",  "%=",  "&=",  "|=",  "^=",  "<<",  ">>",  "**",
    "{",    "}",   "(",   ")",   "[",   "]",   ";",   ",",   "<",   ">",   "+",
    "-",    "*",   "/",   "%",   "&",   "|",   "^",   "!",
};
constexpr std::array<std::string_view, 7> kSinglePunctuators = {"~", "?", ":", "=", ".", "@", "#"};

}  // namespace

bool is_id_start(char32_t c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '$' || c == '_' ||
           (c >= 0x80 && !is_unicode_space(c) && !is_line_terminator(c));
}

bool is_id_part(char32_t c) {
    return is_id_start(c) || (c >= '0' && c <= '9') || c == 0x200C || c == 0x200D;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

Lexer::Lexer(std::string_view source, Ast& ast) : src_(source), ast_(ast) {
    if (src_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
    if (src_.substr(pos_, 2) == "#!") {
        while (!at_end() && peek() != '\n' && peek() != '\r') ++pos_;
    }
}

void Lexer::fail(const std::string& message, std::uint32_t at) const { throw SyntaxError(message, at); }

char32_t Lexer::decode_at(std::size_t at, std::size_t& length) const {
    const auto c = static_cast<unsigned char>(src_[at]);
    auto byte = [&](std::size_t k) -> char32_t {
        return at + k < src_.size() ? static_cast<unsigned char>(src_[at + k]) & 0x3Fu : 0u;
    };
    if (c < 0x80) {
        length = 1;
        return c;
    }
    if ((c & 0xE0) == 0xC0) {
        length = 2;
        return ((c & 0x1Fu) << 6) | byte(1);
    }
    if ((c & 0xF0) == 0xE0) {
        length = 3;
        return ((c & 0x0Fu) << 12) | (byte(1) << 6) | byte(2);
    }
    length = 4;
    return ((c & 0x07u) << 18) | (byte(1) << 12) | (byte(2) << 6) | byte(3);
}

bool Lexer::skip_trivia() {
    bool newline = false;
    while (!at_end()) {
        const unsigned char c = peek();
        if (c == ' ' || c == '\t' || c == '\v' || c == '\f') {
            ++pos_;
        } else if (c == '\n' || c == '\r') {
            newline = true;
            ++pos_;
        } else if (c == '/' && peek(1) == '/') {
            pos_ += 2;
            while (!at_end() && peek() != '\n' && peek() != '\r') {
                std::size_t len = 1;
                if (is_line_terminator(decode_at(pos_, len))) break;
                pos_ += static_cast<std::uint32_t>(len);
            }
        } else if (c == '/' && peek(1) == '*') {
            const std::uint32_t start = pos_;
            pos_ += 2;
            for (;;) {
                if (at_end()) fail("unterminated comment", start);
                if (peek() == '*' && peek(1) == '/') {
                    pos_ += 2;
                    break;
                }
                if (peek() == '\n' || peek() == '\r') newline = true;
                ++pos_;
            }
        } else if (c >= 0x80) {
            std::size_t len = 1;
            const char32_t cp = decode_at(pos_, len);
            if (is_unicode_space(cp)) {
                pos_ += static_cast<std::uint32_t>(len);
            } else if (cp == 0x2028 || cp == 0x2029) {
                newline = true;
                pos_ += static_cast<std::uint32_t>(len);
            } else {
                break;
            }
        } else {
            break;
        }
    }
    return newline;
}

Token Lexer::next() {
    const bool newline = skip_trivia();
    Token tok;
    const std::uint32_t begin = pos_;
    if (at_end()) {
        tok.type = TokenType::Eof;
        tok.begin = tok.end = begin;
        tok.newline_before = newline;
        return tok;
    }
    const unsigned char c = peek();
    if (c == '#' && begin != 0) {
        std::size_t len = 1;
        if (pos_ + 1 < src_.size() && (is_id_start(decode_at(pos_ + 1, len)) || peek(1) == '\\')) {
            ++pos_;
            tok = scan_identifier(begin, true);
        } else {
            tok = scan_punctuator(begin);
        }
    } else if (c == '\\' || c >= 0x80 || is_id_start(c)) {
        tok = scan_identifier(begin, false);
    } else if (is_decimal(c) || (c == '.' && is_decimal(peek(1)))) {
        tok = scan_number(begin);
    } else if (c == '"' || c == '\'') {
        tok = scan_string(begin, static_cast<char>(c));
    } else if (c == '`') {
        tok = scan_template(begin);
    } else {
        tok = scan_punctuator(begin);
    }
    tok.newline_before = newline;
    return tok;
}

char32_t Lexer::read_unicode_escape() {
    // positioned after "\u"
    const std::uint32_t start = pos_;
    char32_t value = 0;
    if (peek() == '{') {
        ++pos_;
        int digits = 0;
        while (!at_end() && peek() != '}') {
            const int h = hex_value(peek());
            if (h < 0) fail("invalid unicode escape", start);
            value = value * 16 + static_cast<char32_t>(h);
            if (value > 0x10FFFF) fail("unicode escape out of range", start);
            ++pos_;
            ++digits;
        }
        if (at_end() || digits == 0) fail("invalid unicode escape", start);
        ++pos_;
        return value;
    }
    for (int i = 0; i < 4; ++i) {
        const int h = hex_value(peek());
        if (h < 0) fail("invalid unicode escape", start);
        value = value * 16 + static_cast<char32_t>(h);
        ++pos_;
    }
    return value;
}

Token Lexer::scan_identifier(std::uint32_t begin, bool private_name) {
    Token tok;
    tok.type = private_name ? TokenType::PrivateName : TokenType::Identifier;
    tok.begin = begin;
    std::string cooked;
    bool escaped = false;
    const std::uint32_t name_begin = pos_;
    bool first = true;
    while (!at_end()) {
        const unsigned char c = peek();
        if (c == '\\') {
            if (peek(1) != 'u') fail("invalid escape in identifier", pos_);
            if (!escaped) {
                escaped = true;
                cooked.assign(src_.substr(name_begin, pos_ - name_begin));
            }
            pos_ += 2;
            const char32_t cp = read_unicode_escape();
            if (first ? !is_id_start(cp) : !is_id_part(cp)) fail("invalid identifier escape", begin);
            append_utf8(cooked, cp);
        } else {
            std::size_t len = 1;
            const char32_t cp = decode_at(pos_, len);
            if (first ? !is_id_start(cp) : !is_id_part(cp)) break;
            if (escaped) cooked.append(src_.substr(pos_, len));
            pos_ += static_cast<std::uint32_t>(len);
        }
        first = false;
    }
    if (pos_ == name_begin) fail("unexpected character", begin);
    tok.end = pos_;
    tok.escaped = escaped;
    tok.value = escaped ? ast_.intern(std::move(cooked)) : src_.substr(name_begin, pos_ - name_begin);
    return tok;
}

Token Lexer::scan_number(std::uint32_t begin) {
    Token tok;
    tok.type = TokenType::Number;
    tok.begin = begin;
    auto digits = [&](auto&& accept) {
        while (!at_end() && (accept(peek()) || (peek() == '_' && accept(peek(1))))) ++pos_;
    };
    const unsigned char c = peek();
    if (c == '0' && (peek(1) == 'x' || peek(1) == 'X' || peek(1) == 'o' || peek(1) == 'O' ||
                     peek(1) == 'b' || peek(1) == 'B')) {
        const unsigned char radix = static_cast<unsigned char>(peek(1) | 0x20);
        pos_ += 2;
        const std::uint32_t body = pos_;
        if (radix == 'x') digits([](unsigned char d) { return hex_value(d) >= 0; });
        if (radix == 'o') digits([](unsigned char d) { return d >= '0' && d <= '7'; });
        if (radix == 'b') digits([](unsigned char d) { return d == '0' || d == '1'; });
        if (pos_ == body) fail("missing digits after radix prefix", begin);
        if (peek() == 'n') {
            ++pos_;
            tok.type = TokenType::BigInt;
        }
    } else {
        digits(is_decimal);
        bool integral = true;
        if (peek() == '.') {
            integral = false;
            ++pos_;
            digits(is_decimal);
        }
        if (peek() == 'e' || peek() == 'E') {
            const unsigned char sign = peek(1);
            if (is_decimal(sign) || ((sign == '+' || sign == '-') && is_decimal(peek(2)))) {
                integral = false;
                pos_ += (sign == '+' || sign == '-') ? 2 : 1;
                digits(is_decimal);
            }
        }
        if (integral && peek() == 'n') {
            ++pos_;
            tok.type = TokenType::BigInt;
        }
    }
    std::size_t len = 1;
    if (!at_end() && (is_id_start(decode_at(pos_, len)) || is_decimal(peek()))) {
        fail("identifier directly after number", begin);
    }
    tok.end = pos_;
    tok.value = src_.substr(begin, pos_ - begin);
    return tok;
}

Token Lexer::scan_string(std::uint32_t begin, char quote) {
    Token tok;
    tok.type = TokenType::String;
    tok.begin = begin;
    ++pos_;
    std::string cooked;
    for (;;) {
        if (at_end()) fail("unterminated string literal", begin);
        const unsigned char c = peek();
        if (c == static_cast<unsigned char>(quote)) {
            ++pos_;
            break;
        }
        if (c == '\n' || c == '\r') fail("unterminated string literal", begin);
        if (c != '\\') {
            cooked.push_back(static_cast<char>(c));
            ++pos_;
            continue;
        }
        ++pos_;
        if (at_end()) fail("unterminated string literal", begin);
        const unsigned char e = peek();
        ++pos_;
        switch (e) {
            case 'n': cooked.push_back('\n'); break;
            case 't': cooked.push_back('\t'); break;
            case 'r': cooked.push_back('\r'); break;
            case 'b': cooked.push_back('\b'); break;
            case 'f': cooked.push_back('\f'); break;
            case 'v': cooked.push_back('\v'); break;
            case '\r':
                if (peek() == '\n') ++pos_;
                break;
            case '\n': break;
            case 'x': {
                const int hi = hex_value(peek());
                const int lo = hex_value(peek(1));
                if (hi < 0 || lo < 0) fail("invalid hex escape", pos_);
                pos_ += 2;
                append_utf8(cooked, static_cast<char32_t>(hi * 16 + lo));
                break;
            }
            case 'u': {
                char32_t cp = read_unicode_escape();
                if (cp >= 0xD800 && cp <= 0xDBFF && peek() == '\\' && peek(1) == 'u') {
                    const std::uint32_t save = pos_;
                    pos_ += 2;
                    const char32_t low = read_unicode_escape();
                    if (low >= 0xDC00 && low <= 0xDFFF) {
                        cp = 0x10000 + ((cp - 0xD800) << 10) + (low - 0xDC00);
                    } else {
                        pos_ = save;
                    }
                }
                append_utf8(cooked, cp);
                break;
            }
            default:
                if (e >= '0' && e <= '7') {
                    // legacy octal escape, up to three digits
                    int value = e - '0';
                    for (int k = 0; k < 2 && peek() >= '0' && peek() <= '7' && value * 8 + (peek() - '0') <= 0377; ++k) {
                        value = value * 8 + (peek() - '0');
                        ++pos_;
                    }
                    append_utf8(cooked, static_cast<char32_t>(value));
                } else {
                    // any other character (including multi-byte) escapes to itself
                    cooked.push_back(static_cast<char>(e));
                }
        }
    }
    tok.end = pos_;
    tok.value = ast_.intern(std::move(cooked));
    return tok;
}

Token Lexer::scan_template(std::uint32_t begin) {
    // positioned on '`' or '}'
    Token tok;
    tok.type = TokenType::Template;
    tok.begin = begin;
    ++pos_;
    const std::uint32_t content = pos_;
    for (;;) {
        if (at_end()) fail("unterminated template literal", begin);
        const unsigned char c = peek();
        if (c == '`') {
            tok.value = src_.substr(content, pos_ - content);
            ++pos_;
            tok.template_tail = true;
            break;
        }
        if (c == '$' && peek(1) == '{') {
            tok.value = src_.substr(content, pos_ - content);
            pos_ += 2;
            break;
        }
        if (c == '\\') ++pos_;
        ++pos_;
    }
    tok.end = pos_;
    return tok;
}

Token Lexer::scan_punctuator(std::uint32_t begin) {
    Token tok;
    tok.type = TokenType::Punctuator;
    tok.begin = begin;
    const std::string_view rest = src_.substr(pos_);
    for (std::string_view p : kPunctuators) {
        if (rest.substr(0, p.size()) == p) {
            // "?." followed by a digit is a conditional and a number
            if (p == "?." && rest.size() > 2 && is_decimal(static_cast<unsigned char>(rest[2]))) continue;
            pos_ += static_cast<std::uint32_t>(p.size());
            tok.end = pos_;
            tok.value = src_.substr(begin, p.size());
            return tok;
        }
    }
    for (std::string_view p : kSinglePunctuators) {
        if (rest.front() == p.front()) {
            ++pos_;
            tok.end = pos_;
            tok.value = src_.substr(begin, 1);
            return tok;
        }
    }
    fail(std::string("unexpected character '") + rest.front() + "'", begin);
}

Token Lexer::rescan_regex(const Token& slash) {
    pos_ = slash.begin + 1;
    bool in_class = false;
    for (;;) {
        if (at_end()) fail("unterminated regular expression", slash.begin);
        const unsigned char c = peek();
        if (c == '\n' || c == '\r') fail("unterminated regular expression", slash.begin);
        if (c == '\\') {
            pos_ += 2;
            continue;
        }
        if (c == '[') in_class = true;
        if (c == ']') in_class = false;
        ++pos_;
        if (c == '/' && !in_class) break;
    }
    while (!at_end()) {
        std::size_t len = 1;
        if (!is_id_part(decode_at(pos_, len))) break;
        pos_ += static_cast<std::uint32_t>(len);
    }
    Token tok;
    tok.type = TokenType::Regex;
    tok.begin = slash.begin;
    tok.end = pos_;
    tok.value = src_.substr(tok.begin, tok.end - tok.begin);
    tok.newline_before = slash.newline_before;
    return tok;
}

Token Lexer::rescan_template_continuation(const Token& rbrace) {
    pos_ = rbrace.begin;
    Token tok = scan_template(rbrace.begin);
    tok.newline_before = rbrace.newline_before;
    return tok;
}

Token Lexer::rescan_jsx_identifier(const Token& ident) {
    pos_ = ident.end;
    while (!at_end()) {
        std::size_t len = 1;
        const char32_t cp = decode_at(pos_, len);
        if (cp != '-' && !is_id_part(cp)) break;
        pos_ += static_cast<std::uint32_t>(len);
    }
    Token tok = ident;
    tok.end = pos_;
    if (!ident.escaped) tok.value = src_.substr(tok.begin, tok.end - tok.begin);
    return tok;
}

Token Lexer::scan_jsx_text(std::uint32_t from) {
    pos_ = from;
    while (!at_end() && peek() != '<' && peek() != '{') ++pos_;
    if (pos_ == from) return next();
    Token tok;
    tok.type = TokenType::JSXText;
    tok.begin = from;
    tok.end = pos_;
    tok.value = src_.substr(from, pos_ - from);
    return tok;
}

Token Lexer::scan_jsx_attribute_string(const Token& quote_token) {
    // JSX attribute strings have no escape sequences.
    pos_ = quote_token.begin;
    const unsigned char quote = peek();
    ++pos_;
    while (!at_end() && peek() != quote) ++pos_;
    if (at_end()) fail("unterminated JSX string", quote_token.begin);
    ++pos_;
    Token tok;
    tok.type = TokenType::String;
    tok.begin = quote_token.begin;
    tok.end = pos_;
    tok.value = src_.substr(tok.begin + 1, tok.end - tok.begin - 2);
    tok.newline_before = quote_token.newline_before;
    return tok;
}

Token Lexer::scan_jsx_attribute_value(std::uint32_t from) {
    pos_ = from;
    const bool newline = skip_trivia();
    if (peek() == '"' || peek() == '\'') {
        Token quote;
        quote.begin = pos_;
        quote.newline_before = newline;
        return scan_jsx_attribute_string(quote);
    }
    pos_ = from;
    return next();
}

Token Lexer::split_leading(const Token& tok, std::size_t length) {
    Token head = tok;
    head.end = tok.begin + static_cast<std::uint32_t>(length);
    head.value = src_.substr(head.begin, length);
    pos_ = head.end;
    return head;
}

}  // namespace adhoc::js
