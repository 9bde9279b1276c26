#include "corec/js/parser.hpp"

#include <cassert>

namespace corec::js {

namespace {

class Parser {
public:
    explicit Parser(std::string_view source) : tokens_(lex(source)) {}

    NodePtr parse_program() {
        auto prog = node(NodeKind::Program, cur().start);
        while (!at_eof()) prog->children.push_back(parse_statement());
        prog->end = cur().end;
        return prog;
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;

    const Token& cur() const { return tokens_[pos_]; }
    const Token& peek(std::size_t k = 1) const {
        std::size_t i = pos_ + k;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }
    bool at_eof() const { return cur().kind == TokenKind::EndOfFile; }
    bool at(TokenKind k, std::string_view t) const { return cur().kind == k && cur().text == t; }
    bool at_punct(std::string_view t) const { return at(TokenKind::Punctuator, t); }
    bool at_kw(std::string_view t) const { return at(TokenKind::Keyword, t); }

    const Token& advance() { return tokens_[pos_++]; }
    bool eat_punct(std::string_view t) {
        if (at_punct(t)) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool eat_kw(std::string_view t) {
        if (at_kw(t)) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect_punct(std::string_view t) {
        if (!eat_punct(t)) fail(std::string("expected '") + std::string(t) + "'");
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " near '" + (at_eof() ? "<eof>" : cur().text) + "'", cur().line,
                         cur().column);
    }

    static NodePtr node(NodeKind k, std::size_t start) { return std::make_unique<Node>(k, start, start); }

    void finish(Node& n) { n.end = pos_ > 0 ? tokens_[pos_ - 1].end : 0; }

    // Names usable as identifiers even though the lexer tags them keywords.
    bool at_soft_keyword_ident() const {
        return cur().kind == TokenKind::Keyword &&
               (cur().text == "async" || cur().text == "get" || cur().text == "set" ||
                cur().text == "of" || cur().text == "static" || cur().text == "let" ||
                cur().text == "await" || cur().text == "yield" || cur().text == "undefined");
    }
    bool at_identifier() const {
        return cur().kind == TokenKind::Identifier || at_soft_keyword_ident();
    }
    std::string expect_identifier() {
        if (!at_identifier()) fail("expected identifier");
        return advance().text;
    }

    void eat_semicolon() { eat_punct(";"); }  // lenient automatic-semicolon handling

    // ---- statements -------------------------------------------------------

    NodePtr parse_statement() {
        const Token& t = cur();
        if (t.kind == TokenKind::Punctuator) {
            if (t.text == "{") return parse_block();
            if (t.text == ";") {
                auto n = node(NodeKind::EmptyStatement, t.start);
                advance();
                finish(*n);
                return n;
            }
        }
        if (t.kind == TokenKind::Keyword) {
            if (t.text == "var" || t.text == "let" || t.text == "const") {
                // "let" may also start an expression in sloppy code; treat as decl
                // only when a binding follows.
                if (t.text != "let" || peek().kind == TokenKind::Identifier ||
                    peek().text == "[" || peek().text == "{")
                    return parse_variable_statement();
            }
            if (t.text == "function") return parse_function(NodeKind::FunctionDeclaration);
            if (t.text == "async" && peek().is(TokenKind::Keyword, "function")) {
                advance();
                return parse_function(NodeKind::FunctionDeclaration);
            }
            if (t.text == "class") return parse_class(NodeKind::ClassDeclaration);
            if (t.text == "return") return parse_return();
            if (t.text == "if") return parse_if();
            if (t.text == "for") return parse_for();
            if (t.text == "while") return parse_while();
            if (t.text == "do") return parse_do_while();
            if (t.text == "switch") return parse_switch();
            if (t.text == "try") return parse_try();
            if (t.text == "throw") return parse_throw();
            if (t.text == "break" || t.text == "continue") return parse_break_continue();
            if (t.text == "import" && !peek().is(TokenKind::Punctuator, "(")) return parse_import();
            if (t.text == "export") return parse_export();
            if (t.text == "debugger") {
                auto n = node(NodeKind::DebuggerStatement, t.start);
                advance();
                eat_semicolon();
                finish(*n);
                return n;
            }
        }
        // Labeled statement.
        if (t.kind == TokenKind::Identifier && peek().is(TokenKind::Punctuator, ":")) {
            auto n = node(NodeKind::LabeledStatement, t.start);
            n->text = advance().text;
            advance();  // ':'
            n->children.push_back(parse_statement());
            finish(*n);
            return n;
        }
        auto n = node(NodeKind::ExpressionStatement, t.start);
        n->children.push_back(parse_expression());
        eat_semicolon();
        finish(*n);
        return n;
    }

    NodePtr parse_block() {
        auto n = node(NodeKind::BlockStatement, cur().start);
        expect_punct("{");
        while (!at_punct("}") && !at_eof()) n->children.push_back(parse_statement());
        expect_punct("}");
        finish(*n);
        return n;
    }

    NodePtr parse_variable_statement() {
        auto n = parse_variable_declaration();
        eat_semicolon();
        finish(*n);
        return n;
    }

    NodePtr parse_variable_declaration() {
        auto n = node(NodeKind::VariableDeclaration, cur().start);
        n->text = advance().text;  // var/let/const
        do {
            auto d = node(NodeKind::VariableDeclarator, cur().start);
            if (at_punct("{") || at_punct("[")) {
                d->children.push_back(parse_binding_pattern());
            } else {
                d->text = expect_identifier();
            }
            if (eat_punct("=")) d->children.push_back(parse_assignment());
            finish(*d);
            n->children.push_back(std::move(d));
        } while (eat_punct(","));
        finish(*n);
        return n;
    }

    NodePtr parse_binding_pattern() {
        if (at_punct("[")) {
            auto n = node(NodeKind::ArrayPattern, cur().start);
            advance();
            while (!at_punct("]") && !at_eof()) {
                if (at_punct(",")) {
                    advance();
                    continue;
                }
                n->children.push_back(parse_binding_element());
                if (!at_punct("]")) expect_punct(",");
            }
            expect_punct("]");
            finish(*n);
            return n;
        }
        auto n = node(NodeKind::ObjectPattern, cur().start);
        expect_punct("{");
        while (!at_punct("}") && !at_eof()) {
            if (at_punct("...")) {
                auto r = node(NodeKind::RestElement, cur().start);
                advance();
                r->text = expect_identifier();
                finish(*r);
                n->children.push_back(std::move(r));
            } else {
                auto p = node(NodeKind::Property, cur().start);
                if (at_punct("[")) {
                    advance();
                    p->computed = true;
                    p->children.push_back(parse_assignment());
                    expect_punct("]");
                } else if (cur().kind == TokenKind::String || cur().kind == TokenKind::Number) {
                    p->text = advance().text;
                } else {
                    p->text = expect_identifier();
                }
                if (eat_punct(":")) {
                    p->children.push_back(parse_binding_element());
                } else if (eat_punct("=")) {
                    p->children.push_back(parse_assignment());
                }
                finish(*p);
                n->children.push_back(std::move(p));
            }
            if (!at_punct("}")) expect_punct(",");
        }
        expect_punct("}");
        finish(*n);
        return n;
    }

    NodePtr parse_binding_element() {
        NodePtr target;
        if (at_punct("{") || at_punct("[")) {
            target = parse_binding_pattern();
        } else if (at_punct("...")) {
            auto r = node(NodeKind::RestElement, cur().start);
            advance();
            r->text = expect_identifier();
            finish(*r);
            return r;
        } else {
            auto id = node(NodeKind::Identifier, cur().start);
            id->text = expect_identifier();
            finish(*id);
            target = std::move(id);
        }
        if (eat_punct("=")) {
            auto n = std::make_unique<Node>(NodeKind::AssignmentPattern, target->start, target->start);
            if (target->kind == NodeKind::Identifier) n->text = target->text;
            n->children.push_back(std::move(target));
            n->children.push_back(parse_assignment());
            finish(*n);
            return n;
        }
        return target;
    }

    // kind is FunctionDeclaration or FunctionExpression; current token is 'function'.
    NodePtr parse_function(NodeKind kind) {
        auto n = node(kind, cur().start);
        advance();          // 'function'
        eat_punct("*");     // generator
        if (at_identifier()) n->text = advance().text;
        parse_params_into(*n);
        n->children.push_back(parse_block());
        finish(*n);
        return n;
    }

    void parse_params_into(Node& fn) {
        expect_punct("(");
        while (!at_punct(")") && !at_eof()) {
            fn.children.push_back(parse_binding_element());
            if (!at_punct(")")) expect_punct(",");
        }
        expect_punct(")");
    }

    NodePtr parse_class(NodeKind kind) {
        auto n = node(kind, cur().start);
        advance();  // 'class'
        if (at_identifier()) n->text = advance().text;
        if (eat_kw("extends")) n->children.push_back(parse_unary());
        expect_punct("{");
        while (!at_punct("}") && !at_eof()) {
            if (eat_punct(";")) continue;
            n->children.push_back(parse_class_member());
        }
        expect_punct("}");
        finish(*n);
        return n;
    }

    NodePtr parse_class_member() {
        std::size_t start = cur().start;
        if (at_kw("static") && !peek().is(TokenKind::Punctuator, "(")) advance();
        if ((at_kw("get") || at_kw("set")) && !peek().is(TokenKind::Punctuator, "(") &&
            !peek().is(TokenKind::Punctuator, "="))
            advance();
        if (at_kw("async") && !peek().is(TokenKind::Punctuator, "(")) advance();
        eat_punct("*");
        std::string name;
        bool computed = false;
        if (at_punct("[")) {
            advance();
            computed = true;
            parse_assignment();  // key expression, name unknown
            expect_punct("]");
        } else if (cur().kind == TokenKind::String || cur().kind == TokenKind::Number) {
            name = advance().text;
        } else {
            name = expect_identifier();
        }
        if (at_punct("(")) {
            auto m = node(NodeKind::MethodDefinition, start);
            m->text = name;
            m->computed = computed;
            parse_params_into(*m);
            m->children.push_back(parse_block());
            finish(*m);
            return m;
        }
        // Class field.
        auto p = node(NodeKind::Property, start);
        p->text = name;
        p->computed = computed;
        if (eat_punct("=")) p->children.push_back(parse_assignment());
        eat_semicolon();
        finish(*p);
        return p;
    }

    NodePtr parse_return() {
        auto n = node(NodeKind::ReturnStatement, cur().start);
        std::size_t kw_line = cur().line;
        advance();
        if (!at_punct(";") && !at_punct("}") && !at_eof() && cur().line == kw_line)
            n->children.push_back(parse_expression());
        eat_semicolon();
        finish(*n);
        return n;
    }

    NodePtr parse_if() {
        auto n = node(NodeKind::IfStatement, cur().start);
        advance();
        expect_punct("(");
        n->children.push_back(parse_expression());
        expect_punct(")");
        n->children.push_back(parse_statement());
        if (eat_kw("else")) n->children.push_back(parse_statement());
        finish(*n);
        return n;
    }

    NodePtr parse_for() {
        std::size_t start = cur().start;
        advance();
        expect_punct("(");
        NodePtr init;
        if (!at_punct(";")) {
            if (at_kw("var") || at_kw("let") || at_kw("const"))
                init = parse_variable_declaration();
            else
                init = parse_expression(/*no_in=*/true);
        }
        if (at_kw("in") || at_kw("of")) {
            bool is_in = cur().text == "in";
            advance();
            auto n = node(is_in ? NodeKind::ForInStatement : NodeKind::ForOfStatement, start);
            n->children.push_back(std::move(init));
            n->children.push_back(parse_expression());
            expect_punct(")");
            n->children.push_back(parse_statement());
            finish(*n);
            return n;
        }
        auto n = node(NodeKind::ForStatement, start);
        n->children.push_back(std::move(init));  // may be null
        expect_punct(";");
        n->children.push_back(at_punct(";") ? nullptr : parse_expression());
        expect_punct(";");
        n->children.push_back(at_punct(")") ? nullptr : parse_expression());
        expect_punct(")");
        n->children.push_back(parse_statement());
        finish(*n);
        return n;
    }

    NodePtr parse_while() {
        auto n = node(NodeKind::WhileStatement, cur().start);
        advance();
        expect_punct("(");
        n->children.push_back(parse_expression());
        expect_punct(")");
        n->children.push_back(parse_statement());
        finish(*n);
        return n;
    }

    NodePtr parse_do_while() {
        auto n = node(NodeKind::DoWhileStatement, cur().start);
        advance();
        n->children.push_back(parse_statement());
        if (!eat_kw("while")) fail("expected 'while'");
        expect_punct("(");
        n->children.push_back(parse_expression());
        expect_punct(")");
        eat_semicolon();
        finish(*n);
        return n;
    }

    NodePtr parse_switch() {
        auto n = node(NodeKind::SwitchStatement, cur().start);
        advance();
        expect_punct("(");
        n->children.push_back(parse_expression());
        expect_punct(")");
        expect_punct("{");
        while (!at_punct("}") && !at_eof()) {
            auto c = node(NodeKind::SwitchCase, cur().start);
            if (eat_kw("case")) {
                c->children.push_back(parse_expression());
            } else if (eat_kw("default")) {
                c->text = "default";
            } else {
                fail("expected 'case' or 'default'");
            }
            expect_punct(":");
            while (!at_punct("}") && !at_kw("case") && !at_kw("default") && !at_eof())
                c->children.push_back(parse_statement());
            finish(*c);
            n->children.push_back(std::move(c));
        }
        expect_punct("}");
        finish(*n);
        return n;
    }

    NodePtr parse_try() {
        auto n = node(NodeKind::TryStatement, cur().start);
        advance();
        n->children.push_back(parse_block());
        if (eat_kw("catch")) {
            auto c = node(NodeKind::CatchClause, tokens_[pos_ - 1].start);
            if (eat_punct("(")) {
                if (at_punct("{") || at_punct("["))
                    parse_binding_pattern();
                else
                    c->text = expect_identifier();
                expect_punct(")");
            }
            c->children.push_back(parse_block());
            finish(*c);
            n->children.push_back(std::move(c));
        }
        if (eat_kw("finally")) n->children.push_back(parse_block());
        finish(*n);
        return n;
    }

    NodePtr parse_throw() {
        auto n = node(NodeKind::ThrowStatement, cur().start);
        advance();
        n->children.push_back(parse_expression());
        eat_semicolon();
        finish(*n);
        return n;
    }

    NodePtr parse_break_continue() {
        auto n = node(cur().text == "break" ? NodeKind::BreakStatement : NodeKind::ContinueStatement,
                      cur().start);
        std::size_t kw_line = cur().line;
        advance();
        if (cur().kind == TokenKind::Identifier && cur().line == kw_line) n->text = advance().text;
        eat_semicolon();
        finish(*n);
        return n;
    }

    NodePtr parse_import() {
        auto n = node(NodeKind::ImportDeclaration, cur().start);
        advance();  // 'import'
        if (cur().kind == TokenKind::String) {
            n->text = advance().text;
            eat_semicolon();
            finish(*n);
            return n;
        }
        auto add_spec = [&](const std::string& local) {
            auto id = node(NodeKind::Identifier, cur().start);
            id->text = local;
            finish(*id);
            n->children.push_back(std::move(id));
        };
        bool expect_from = false;
        if (at_identifier()) {
            add_spec(advance().text);  // default import
            expect_from = true;
            eat_punct(",");
        }
        if (at_punct("*")) {
            advance();
            if (cur().kind == TokenKind::Identifier && cur().text == "as") advance();
            add_spec(expect_identifier());
            expect_from = true;
        } else if (at_punct("{")) {
            advance();
            while (!at_punct("}") && !at_eof()) {
                std::string imported = expect_identifier();
                std::string local = imported;
                if (cur().kind == TokenKind::Identifier && cur().text == "as") {
                    advance();
                    local = expect_identifier();
                }
                add_spec(local);
                if (!at_punct("}")) expect_punct(",");
            }
            expect_punct("}");
            expect_from = true;
        }
        if (expect_from) {
            if (!(cur().kind == TokenKind::Identifier && cur().text == "from"))
                fail("expected 'from'");
            advance();
            if (cur().kind != TokenKind::String) fail("expected module string");
            n->text = advance().text;
        }
        eat_semicolon();
        finish(*n);
        return n;
    }

    NodePtr parse_export() {
        std::size_t start = cur().start;
        advance();  // 'export'
        if (eat_kw("default")) {
            auto n = node(NodeKind::ExportDefaultDeclaration, start);
            if (at_kw("function") || (at_kw("async") && peek().is(TokenKind::Keyword, "function"))) {
                if (at_kw("async")) advance();
                n->children.push_back(parse_function(NodeKind::FunctionDeclaration));
            } else if (at_kw("class")) {
                n->children.push_back(parse_class(NodeKind::ClassDeclaration));
            } else {
                n->children.push_back(parse_assignment());
                eat_semicolon();
            }
            finish(*n);
            return n;
        }
        auto n = node(NodeKind::ExportNamedDeclaration, start);
        if (at_punct("*")) {
            advance();
            if (cur().kind == TokenKind::Identifier && cur().text == "as") {
                advance();
                expect_identifier();
            }
            if (cur().kind == TokenKind::Identifier && cur().text == "from") {
                advance();
                if (cur().kind != TokenKind::String) fail("expected module string");
                n->text = advance().text;
            }
            eat_semicolon();
        } else if (at_punct("{")) {
            advance();
            while (!at_punct("}") && !at_eof()) {
                auto id = node(NodeKind::Identifier, cur().start);
                id->text = expect_identifier();
                finish(*id);
                n->children.push_back(std::move(id));
                if (cur().kind == TokenKind::Identifier && cur().text == "as") {
                    advance();
                    expect_identifier();
                }
                if (!at_punct("}")) expect_punct(",");
            }
            expect_punct("}");
            if (cur().kind == TokenKind::Identifier && cur().text == "from") {
                advance();
                if (cur().kind != TokenKind::String) fail("expected module string");
                n->text = advance().text;
            }
            eat_semicolon();
        } else {
            n->children.push_back(parse_statement());  // export var/let/const/function/class
        }
        finish(*n);
        return n;
    }

    // ---- expressions ------------------------------------------------------

    NodePtr parse_expression(bool no_in = false) {
        auto first = parse_assignment(no_in);
        if (!at_punct(",")) return first;
        auto n = std::make_unique<Node>(NodeKind::SequenceExpression, first->start, first->start);
        n->children.push_back(std::move(first));
        while (eat_punct(",")) n->children.push_back(parse_assignment(no_in));
        finish(*n);
        return n;
    }

    bool looks_like_arrow_params() const {
        // cur() is '('; scan to the matching ')' and check for '=>'.
        int depth = 0;
        for (std::size_t i = pos_; i < tokens_.size(); ++i) {
            const Token& t = tokens_[i];
            if (t.kind == TokenKind::Punctuator) {
                if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
                if (t.text == ")" || t.text == "]" || t.text == "}") {
                    --depth;
                    if (depth == 0) return tokens_[i + 1].is(TokenKind::Punctuator, "=>");
                }
            }
            if (t.kind == TokenKind::EndOfFile) break;
        }
        return false;
    }

    NodePtr parse_arrow(std::size_t start) {
        // cur() is '(' (param list) or a single identifier.
        auto n = node(NodeKind::ArrowFunctionExpression, start);
        if (at_punct("(")) {
            parse_params_into(*n);
        } else {
            auto id = node(NodeKind::Identifier, cur().start);
            id->text = expect_identifier();
            finish(*id);
            n->children.push_back(std::move(id));
        }
        expect_punct("=>");
        if (at_punct("{"))
            n->children.push_back(parse_block());
        else
            n->children.push_back(parse_assignment());
        finish(*n);
        return n;
    }

    NodePtr parse_assignment(bool no_in = false) {
        if (at_kw("yield")) {
            auto n = node(NodeKind::YieldExpression, cur().start);
            std::size_t kw_line = cur().line;
            advance();
            eat_punct("*");
            if (!at_punct(")") && !at_punct("]") && !at_punct("}") && !at_punct(";") &&
                !at_punct(",") && !at_eof() && cur().line == kw_line)
                n->children.push_back(parse_assignment(no_in));
            finish(*n);
            return n;
        }
        if (at_kw("async")) {
            bool arrow = peek().kind == TokenKind::Identifier &&
                         peek(2).is(TokenKind::Punctuator, "=>");
            if (!arrow && peek().is(TokenKind::Punctuator, "(")) {
                ++pos_;
                arrow = looks_like_arrow_params();
                --pos_;
            }
            if (arrow) {
                std::size_t start = cur().start;
                advance();  // 'async'
                return parse_arrow(start);
            }
        }
        if (at_identifier() && peek().is(TokenKind::Punctuator, "=>")) return parse_arrow(cur().start);
        if (at_punct("(") && looks_like_arrow_params()) return parse_arrow(cur().start);

        auto lhs = parse_conditional(no_in);
        static const char* ops[] = {"=",  "+=",  "-=",  "*=",  "/=",  "%=",   "**=",
                                    "<<=", ">>=", ">>>=", "&=", "|=", "^=", "&&=", "||=", "??="};
        for (const char* op : ops) {
            if (at_punct(op)) {
                auto n = std::make_unique<Node>(NodeKind::AssignmentExpression, lhs->start, lhs->start);
                n->text = advance().text;
                n->children.push_back(std::move(lhs));
                n->children.push_back(parse_assignment(no_in));
                finish(*n);
                return n;
            }
        }
        return lhs;
    }

    NodePtr parse_conditional(bool no_in) {
        auto test = parse_binary(0, no_in);
        if (!at_punct("?") || at_punct("?.")) return test;
        if (!eat_punct("?")) return test;
        auto n = std::make_unique<Node>(NodeKind::ConditionalExpression, test->start, test->start);
        n->children.push_back(std::move(test));
        n->children.push_back(parse_assignment());
        expect_punct(":");
        n->children.push_back(parse_assignment(no_in));
        finish(*n);
        return n;
    }

    int binary_prec(const Token& t, bool no_in) const {
        if (t.kind == TokenKind::Keyword) {
            if (t.text == "instanceof") return 7;
            if (t.text == "in" && !no_in) return 7;
            return -1;
        }
        if (t.kind != TokenKind::Punctuator) return -1;
        const std::string& o = t.text;
        if (o == "??") return 1;
        if (o == "||") return 2;
        if (o == "&&") return 3;
        if (o == "|") return 4;
        if (o == "^") return 5;
        if (o == "&") return 6;
        if (o == "==" || o == "!=" || o == "===" || o == "!==") return 7;
        if (o == "<" || o == ">" || o == "<=" || o == ">=") return 7;
        if (o == "<<" || o == ">>" || o == ">>>") return 8;
        if (o == "+" || o == "-") return 9;
        if (o == "*" || o == "/" || o == "%") return 10;
        if (o == "**") return 11;
        return -1;
    }

    NodePtr parse_binary(int min_prec, bool no_in) {
        auto lhs = parse_unary();
        while (true) {
            int prec = binary_prec(cur(), no_in);
            if (prec < 0 || prec < min_prec) return lhs;
            bool logical = at_punct("&&") || at_punct("||") || at_punct("??");
            auto n = std::make_unique<Node>(
                logical ? NodeKind::LogicalExpression : NodeKind::BinaryExpression, lhs->start,
                lhs->start);
            n->text = advance().text;
            n->children.push_back(std::move(lhs));
            n->children.push_back(parse_binary(prec + 1, no_in));
            finish(*n);
            lhs = std::move(n);
        }
    }

    NodePtr parse_unary() {
        const Token& t = cur();
        if (t.is(TokenKind::Punctuator, "!") || t.is(TokenKind::Punctuator, "~") ||
            t.is(TokenKind::Punctuator, "+") || t.is(TokenKind::Punctuator, "-") ||
            t.is(TokenKind::Keyword, "typeof") || t.is(TokenKind::Keyword, "void") ||
            t.is(TokenKind::Keyword, "delete") || t.is(TokenKind::Keyword, "await")) {
            auto n = node(t.is(TokenKind::Keyword, "await") ? NodeKind::AwaitExpression
                                                            : NodeKind::UnaryExpression,
                          t.start);
            n->text = advance().text;
            n->children.push_back(parse_unary());
            finish(*n);
            return n;
        }
        if (t.is(TokenKind::Punctuator, "++") || t.is(TokenKind::Punctuator, "--")) {
            auto n = node(NodeKind::UpdateExpression, t.start);
            n->text = advance().text;
            n->children.push_back(parse_unary());
            finish(*n);
            return n;
        }
        auto expr = parse_postfix();
        if (at_punct("++") || at_punct("--")) {
            auto n = std::make_unique<Node>(NodeKind::UpdateExpression, expr->start, expr->start);
            n->text = advance().text;
            n->children.push_back(std::move(expr));
            finish(*n);
            return n;
        }
        return expr;
    }

    NodePtr parse_postfix() { return parse_call_chain(parse_primary_or_new()); }

    NodePtr parse_primary_or_new() {
        if (at_kw("new")) {
            std::size_t start = cur().start;
            advance();
            auto n = node(NodeKind::NewExpression, start);
            // Member chain without calls forms the constructor expression.
            auto callee = parse_primary();
            while (true) {
                if (at_punct(".")) {
                    advance();
                    auto m = std::make_unique<Node>(NodeKind::MemberExpression, callee->start,
                                                    callee->start);
                    m->text = ".";
                    m->children.push_back(std::move(callee));
                    auto prop = node(NodeKind::Identifier, cur().start);
                    prop->text = expect_identifier();
                    finish(*prop);
                    m->children.push_back(std::move(prop));
                    finish(*m);
                    callee = std::move(m);
                } else if (at_punct("[")) {
                    advance();
                    auto m = std::make_unique<Node>(NodeKind::MemberExpression, callee->start,
                                                    callee->start);
                    m->text = "[]";
                    m->computed = true;
                    m->children.push_back(std::move(callee));
                    m->children.push_back(parse_expression());
                    expect_punct("]");
                    finish(*m);
                    callee = std::move(m);
                } else {
                    break;
                }
            }
            n->children.push_back(std::move(callee));
            if (at_punct("(")) parse_arguments_into(*n);
            finish(*n);
            return n;
        }
        return parse_primary();
    }

    void parse_arguments_into(Node& n) {
        expect_punct("(");
        while (!at_punct(")") && !at_eof()) {
            if (at_punct("...")) {
                auto s = node(NodeKind::SpreadElement, cur().start);
                advance();
                s->children.push_back(parse_assignment());
                finish(*s);
                n.children.push_back(std::move(s));
            } else {
                n.children.push_back(parse_assignment());
            }
            if (!at_punct(")")) expect_punct(",");
        }
        expect_punct(")");
    }

    NodePtr parse_call_chain(NodePtr expr) {
        while (true) {
            if (at_punct(".") || at_punct("?.")) {
                bool optional_call = at_punct("?.") && peek().is(TokenKind::Punctuator, "(");
                advance();
                if (optional_call) {
                    auto n = std::make_unique<Node>(NodeKind::CallExpression, expr->start, expr->start);
                    n->children.push_back(std::move(expr));
                    parse_arguments_into(*n);
                    finish(*n);
                    expr = std::move(n);
                    continue;
                }
                auto m = std::make_unique<Node>(NodeKind::MemberExpression, expr->start, expr->start);
                m->text = ".";
                m->children.push_back(std::move(expr));
                auto prop = node(NodeKind::Identifier, cur().start);
                prop->text = expect_identifier();
                finish(*prop);
                m->children.push_back(std::move(prop));
                finish(*m);
                expr = std::move(m);
            } else if (at_punct("[")) {
                advance();
                auto m = std::make_unique<Node>(NodeKind::MemberExpression, expr->start, expr->start);
                m->text = "[]";
                m->computed = true;
                m->children.push_back(std::move(expr));
                m->children.push_back(parse_expression());
                expect_punct("]");
                finish(*m);
                expr = std::move(m);
            } else if (at_punct("(")) {
                auto n = std::make_unique<Node>(NodeKind::CallExpression, expr->start, expr->start);
                n->children.push_back(std::move(expr));
                parse_arguments_into(*n);
                finish(*n);
                expr = std::move(n);
            } else if (cur().kind == TokenKind::Template) {
                auto n = std::make_unique<Node>(NodeKind::TaggedTemplateExpression, expr->start,
                                                expr->start);
                n->text = advance().text;
                n->children.push_back(std::move(expr));
                finish(*n);
                expr = std::move(n);
            } else {
                return expr;
            }
        }
    }

    NodePtr parse_primary() {
        const Token& t = cur();
        switch (t.kind) {
            case TokenKind::Number: {
                auto n = node(NodeKind::NumberLiteral, t.start);
                n->text = advance().text;
                finish(*n);
                return n;
            }
            case TokenKind::String: {
                auto n = node(NodeKind::StringLiteral, t.start);
                n->text = advance().text;
                finish(*n);
                return n;
            }
            case TokenKind::Template: {
                auto n = node(NodeKind::TemplateLiteral, t.start);
                n->text = advance().text;
                finish(*n);
                return n;
            }
            case TokenKind::Regex: {
                auto n = node(NodeKind::RegexLiteral, t.start);
                n->text = advance().text;
                finish(*n);
                return n;
            }
            case TokenKind::Identifier: {
                auto n = node(NodeKind::Identifier, t.start);
                n->text = advance().text;
                finish(*n);
                return n;
            }
            case TokenKind::Keyword: {
                if (t.text == "true" || t.text == "false") {
                    auto n = node(NodeKind::BooleanLiteral, t.start);
                    n->text = advance().text;
                    finish(*n);
                    return n;
                }
                if (t.text == "null" || t.text == "undefined") {
                    auto n = node(NodeKind::NullLiteral, t.start);
                    n->text = advance().text;
                    finish(*n);
                    return n;
                }
                if (t.text == "this") {
                    auto n = node(NodeKind::ThisExpression, t.start);
                    advance();
                    finish(*n);
                    return n;
                }
                if (t.text == "super") {
                    auto n = node(NodeKind::SuperExpression, t.start);
                    advance();
                    finish(*n);
                    return n;
                }
                if (t.text == "function") return parse_function(NodeKind::FunctionExpression);
                if (t.text == "async" && peek().is(TokenKind::Keyword, "function")) {
                    advance();
                    return parse_function(NodeKind::FunctionExpression);
                }
                if (t.text == "class") return parse_class(NodeKind::ClassExpression);
                if (t.text == "import") {
                    // dynamic import(...) handled as a call on an identifier
                    auto n = node(NodeKind::Identifier, t.start);
                    n->text = advance().text;
                    finish(*n);
                    return n;
                }
                if (at_soft_keyword_ident()) {
                    auto n = node(NodeKind::Identifier, t.start);
                    n->text = advance().text;
                    finish(*n);
                    return n;
                }
                fail("unexpected keyword");
            }
            case TokenKind::Punctuator: {
                if (t.text == "(") {
                    advance();
                    auto inner = parse_expression();
                    expect_punct(")");
                    return inner;
                }
                if (t.text == "[") {
                    auto n = node(NodeKind::ArrayExpression, t.start);
                    advance();
                    while (!at_punct("]") && !at_eof()) {
                        if (at_punct(",")) {
                            advance();
                            continue;
                        }
                        if (at_punct("...")) {
                            auto s = node(NodeKind::SpreadElement, cur().start);
                            advance();
                            s->children.push_back(parse_assignment());
                            finish(*s);
                            n->children.push_back(std::move(s));
                        } else {
                            n->children.push_back(parse_assignment());
                        }
                        if (!at_punct("]")) expect_punct(",");
                    }
                    expect_punct("]");
                    finish(*n);
                    return n;
                }
                if (t.text == "{") return parse_object_literal();
                fail("unexpected token");
            }
            default:
                fail("unexpected end of input");
        }
    }

    NodePtr parse_object_literal() {
        auto n = node(NodeKind::ObjectExpression, cur().start);
        expect_punct("{");
        while (!at_punct("}") && !at_eof()) {
            if (at_punct("...")) {
                auto s = node(NodeKind::SpreadElement, cur().start);
                advance();
                s->children.push_back(parse_assignment());
                finish(*s);
                n->children.push_back(std::move(s));
            } else {
                n->children.push_back(parse_object_property());
            }
            if (!at_punct("}")) expect_punct(",");
        }
        expect_punct("}");
        finish(*n);
        return n;
    }

    NodePtr parse_object_property() {
        auto p = node(NodeKind::Property, cur().start);
        bool accessor = false;
        if ((at_kw("get") || at_kw("set")) && !peek().is(TokenKind::Punctuator, ":") &&
            !peek().is(TokenKind::Punctuator, ",") && !peek().is(TokenKind::Punctuator, "}") &&
            !peek().is(TokenKind::Punctuator, "(")) {
            advance();
            accessor = true;
        }
        if (at_kw("async") && !peek().is(TokenKind::Punctuator, ":") &&
            !peek().is(TokenKind::Punctuator, ",") && !peek().is(TokenKind::Punctuator, "}") &&
            !peek().is(TokenKind::Punctuator, "("))
            advance();
        eat_punct("*");
        if (at_punct("[")) {
            advance();
            p->computed = true;
            p->children.push_back(parse_assignment());  // key expr kept as first child
            expect_punct("]");
        } else if (cur().kind == TokenKind::String || cur().kind == TokenKind::Number) {
            p->text = advance().text;
        } else {
            p->text = expect_identifier();
        }
        if (at_punct("(")) {
            // shorthand method / accessor body
            auto fn = node(NodeKind::FunctionExpression, p->start);
            fn->text = p->text;
            parse_params_into(*fn);
            fn->children.push_back(parse_block());
            finish(*fn);
            p->children.push_back(std::move(fn));
        } else if (eat_punct(":")) {
            p->children.push_back(parse_assignment());
        } else if (eat_punct("=")) {
            p->children.push_back(parse_assignment());  // cover pattern-ish defaults
        } else if (!accessor) {
            // shorthand { a }
            auto id = node(NodeKind::Identifier, p->start);
            id->text = p->text;
            id->end = p->end;
            p->children.push_back(std::move(id));
        }
        finish(*p);
        return p;
    }
};

}  // namespace

NodePtr parse(std::string_view source) { return Parser(source).parse_program(); }

}  // namespace corec::js
