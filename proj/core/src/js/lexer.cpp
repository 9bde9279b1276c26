#include "corec/js/lexer.hpp"

#include <array>
#include <cctype>
#include <unordered_set>

namespace corec::js {

namespace {

const std::unordered_set<std::string_view> kKeywords = {
    "await",  "break",   "case",   "catch", "class",  "const",    "continue", "debugger",
    "default", "delete", "do",     "else",  "enum",   "export",   "extends",  "false",
    "finally", "for",    "function", "if",  "import", "in",       "instanceof", "let",
    "new",    "null",    "of",     "return", "static", "super",   "switch",   "this",
    "throw",  "true",    "try",    "typeof", "undefined", "var",  "void",     "while",
    "with",   "yield",   "async",  "get",    "set",
};

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$' ||
           static_cast<unsigned char>(c) >= 0x80;
}

bool ident_part(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }

const std::array<std::string_view, 44> kPuncts = {
    ">>>=", "...", "===", "!==", "**=", "<<=", ">>=", ">>>", "&&=", "||=", "??=",
    "=>",   "==",  "!=",  "<=",  ">=",  "&&",  "||",  "??",  "?.",  "++",  "--",
    "+=",   "-=",  "*=",  "/=",  "%=",  "&=",  "|=",  "^=",  "<<",  ">>",  "**",
    "{",    "}",   "(",   ")",   "[",   "]",   ";",   ",",   "<",   ">",   "+",
};
// Remaining single-character punctuators checked directly.
const std::string_view kSinglePuncts = "-*/%&|^!~?:=.@#";

}  // namespace

bool is_js_keyword(std::string_view word) { return kKeywords.count(word) > 0; }

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> tokens;
    std::size_t i = 0, line = 1, line_start = 0;
    const std::size_t n = src.size();

    auto error = [&](const std::string& msg) -> LexError {
        return LexError(msg, line, i - line_start);
    };
    auto newline = [&](std::size_t pos) {
        line++;
        line_start = pos + 1;
    };

    // Decides whether a '/' starts a regex literal based on the previous
    // significant token.
    auto regex_allowed = [&]() -> bool {
        if (tokens.empty()) return true;
        const Token& t = tokens.back();
        switch (t.kind) {
            case TokenKind::Identifier:
            case TokenKind::Number:
            case TokenKind::String:
            case TokenKind::Template:
            case TokenKind::Regex:
                return false;
            case TokenKind::Keyword:
                return !(t.text == "this" || t.text == "super" || t.text == "true" ||
                         t.text == "false" || t.text == "null" || t.text == "undefined");
            case TokenKind::Punctuator:
                return !(t.text == ")" || t.text == "]" || t.text == "++" || t.text == "--");
            default:
                return true;
        }
    };

    while (i < n) {
        char c = src[i];
        if (c == '\n') {
            newline(i);
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        // Comments.
        if (c == '/' && i + 1 < n && src[i + 1] == '/') {
            while (i < n && src[i] != '\n') ++i;
            continue;
        }
        if (c == '/' && i + 1 < n && src[i + 1] == '*') {
            std::size_t start_line = line;
            i += 2;
            while (i + 1 < n && !(src[i] == '*' && src[i + 1] == '/')) {
                if (src[i] == '\n') newline(i);
                ++i;
            }
            if (i + 1 >= n) {
                line = start_line;
                throw error("unterminated block comment");
            }
            i += 2;
            continue;
        }

        Token tok;
        tok.start = i;
        tok.line = line;
        tok.column = i - line_start + 1;

        if (ident_start(c)) {
            std::size_t s = i;
            while (i < n && ident_part(src[i])) ++i;
            tok.text = std::string(src.substr(s, i - s));
            tok.kind = is_js_keyword(tok.text) ? TokenKind::Keyword : TokenKind::Identifier;
        } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                   (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
            std::size_t s = i;
            if (c == '0' && i + 1 < n && (src[i + 1] == 'x' || src[i + 1] == 'X' ||
                                          src[i + 1] == 'b' || src[i + 1] == 'B' ||
                                          src[i + 1] == 'o' || src[i + 1] == 'O')) {
                i += 2;
                while (i < n && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
            } else {
                while (i < n && (std::isdigit(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
                if (i < n && src[i] == '.') {
                    ++i;
                    while (i < n && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
                }
                if (i < n && (src[i] == 'e' || src[i] == 'E')) {
                    ++i;
                    if (i < n && (src[i] == '+' || src[i] == '-')) ++i;
                    while (i < n && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
                }
            }
            if (i < n && src[i] == 'n') ++i;  // BigInt suffix
            tok.text = std::string(src.substr(s, i - s));
            tok.kind = TokenKind::Number;
        } else if (c == '"' || c == '\'') {
            char quote = c;
            std::size_t s = i;
            ++i;
            while (i < n && src[i] != quote) {
                if (src[i] == '\\' && i + 1 < n) {
                    if (src[i + 1] == '\n') newline(i + 1);
                    i += 2;
                } else if (src[i] == '\n') {
                    throw error("unterminated string literal");
                } else {
                    ++i;
                }
            }
            if (i >= n) throw error("unterminated string literal");
            ++i;
            tok.text = std::string(src.substr(s, i - s));
            tok.kind = TokenKind::String;
        } else if (c == '`') {
            // The whole template (including interpolations) forms one token.
            std::size_t s = i;
            ++i;
            int brace_depth = 0;
            bool done = false;
            while (i < n) {
                char t = src[i];
                if (t == '\\' && i + 1 < n) {
                    i += 2;
                    continue;
                }
                if (t == '\n') newline(i);
                if (brace_depth == 0 && t == '`') {
                    ++i;
                    done = true;
                    break;
                }
                if (brace_depth == 0 && t == '$' && i + 1 < n && src[i + 1] == '{') {
                    brace_depth = 1;
                    i += 2;
                    continue;
                }
                if (brace_depth > 0) {
                    if (t == '{') ++brace_depth;
                    if (t == '}') --brace_depth;
                }
                ++i;
            }
            if (!done) throw error("unterminated template literal");
            tok.text = std::string(src.substr(s, i - s));
            tok.kind = TokenKind::Template;
        } else if (c == '/' && regex_allowed()) {
            std::size_t s = i;
            ++i;
            bool in_class = false;
            while (i < n) {
                char t = src[i];
                if (t == '\\' && i + 1 < n) {
                    i += 2;
                    continue;
                }
                if (t == '\n') throw error("unterminated regular expression");
                if (t == '[') in_class = true;
                if (t == ']') in_class = false;
                if (t == '/' && !in_class) break;
                ++i;
            }
            if (i >= n) throw error("unterminated regular expression");
            ++i;
            while (i < n && ident_part(src[i])) ++i;  // flags
            tok.text = std::string(src.substr(s, i - s));
            tok.kind = TokenKind::Regex;
        } else {
            bool matched = false;
            for (std::string_view p : kPuncts) {
                if (src.substr(i, p.size()) == p) {
                    tok.text = std::string(p);
                    i += p.size();
                    matched = true;
                    break;
                }
            }
            if (!matched && kSinglePuncts.find(c) != std::string_view::npos) {
                tok.text = std::string(1, c);
                ++i;
                matched = true;
            }
            if (!matched) throw error(std::string("unexpected character '") + c + "'");
            tok.kind = TokenKind::Punctuator;
        }
        tok.end = i;
        tokens.push_back(std::move(tok));
    }

    Token eof;
    eof.kind = TokenKind::EndOfFile;
    eof.start = eof.end = n;
    eof.line = line;
    eof.column = n - line_start + 1;
    tokens.push_back(std::move(eof));
    return tokens;
}

}  // namespace corec::js
