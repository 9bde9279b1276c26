#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace corec::js {

enum class TokenKind {
    Identifier,
    Keyword,
    Punctuator,
    Number,
    String,
    Template,
    Regex,
    EndOfFile,
};

struct Token {
    TokenKind kind = TokenKind::EndOfFile;
    std::string text;       // raw source slice (string/template contents kept verbatim)
    std::size_t start = 0;  // byte offset, inclusive
    std::size_t end = 0;    // byte offset, exclusive
    std::size_t line = 1;
    std::size_t column = 0;

    bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
};

struct LexError : std::runtime_error {
    std::size_t line;
    std::size_t column;
    LexError(const std::string& msg, std::size_t l, std::size_t c)
        : std::runtime_error(msg), line(l), column(c) {}
};

bool is_js_keyword(std::string_view word);

/// Lexes a whole source file. Comments are discarded. Throws LexError on
/// unterminated strings/templates/regexes or unknown characters.
std::vector<Token> lex(std::string_view source);

}  // namespace corec::js
