#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corec/js/lexer.hpp"
#include "corec/js/parser.hpp"

using namespace corec::js;

static std::vector<std::string> token_texts(std::string_view src) {
    std::vector<std::string> out;
    for (const auto& t : lex(src))
        if (t.kind != TokenKind::EndOfFile) out.push_back(t.text);
    return out;
}

TEST_CASE("lexer: basic token stream") {
    auto ts = token_texts("var x = 1 + 2;");
    CHECK(ts == std::vector<std::string>{"var", "x", "=", "1", "+", "2", ";"});
}

TEST_CASE("lexer: comments and whitespace dropped") {
    auto ts = token_texts("a // line\n/* block\n */ b");
    CHECK(ts == std::vector<std::string>{"a", "b"});
}

TEST_CASE("lexer: string and template literals") {
    auto ts = token_texts("s = 'a\\'b' + `t${x + 1}u`");
    CHECK(ts == std::vector<std::string>{"s", "=", "'a\\'b'", "+", "`t${x + 1}u`"});
}

TEST_CASE("lexer: nested template braces stay one token") {
    auto ts = token_texts("`a${ {b: `${c}`} }d`");
    REQUIRE(ts.size() == 1);
    CHECK(lex("`a${ {b: `${c}`} }d`")[0].kind == TokenKind::Template);
}

TEST_CASE("lexer: regex vs division") {
    auto rx = lex("x = /ab+c/g;");
    CHECK(rx[2].kind == TokenKind::Regex);
    CHECK(rx[2].text == "/ab+c/g");
    auto div = lex("x = a / b / c;");
    CHECK(div[3].kind == TokenKind::Punctuator);
    // after ) a slash is division
    auto div2 = lex("(a) / b");
    CHECK(div2[3].text == "/");
    // after a keyword it's a regex
    auto rx2 = lex("return /x/;");
    CHECK(rx2[1].kind == TokenKind::Regex);
    // regex with character class containing a slash
    auto rx3 = lex("m = /[/]/;");
    CHECK(rx3[2].kind == TokenKind::Regex);
}

TEST_CASE("lexer: multi-char punctuators") {
    auto ts = token_texts("a === b !== c >>> d ** e ?. f ?? g => h");
    CHECK(ts == std::vector<std::string>{"a", "===", "b", "!==", "c", ">>>", "d", "**",
                                         "e", "?.", "f", "??", "g", "=>", "h"});
}

TEST_CASE("lexer: numbers") {
    auto ts = token_texts("0x1f 0b101 0o17 1.5e-3 .5 12n");
    CHECK(ts == std::vector<std::string>{"0x1f", "0b101", "0o17", "1.5e-3", ".5", "12n"});
}

TEST_CASE("lexer: line and column tracking") {
    auto toks = lex("a\n  b");
    CHECK(toks[0].line == 1);
    CHECK(toks[1].line == 2);
    CHECK(toks[1].column == 3);
}

TEST_CASE("lexer: unterminated string raises") {
    CHECK_THROWS_AS(lex("'abc"), LexError);
}

static NodePtr parse_ok(std::string_view src) {
    NodePtr p;
    REQUIRE_NOTHROW(p = parse(src));
    REQUIRE(p != nullptr);
    REQUIRE(p->kind == NodeKind::Program);
    return p;
}

TEST_CASE("parser: function declaration shape") {
    auto p = parse_ok("function add(a, b) { return a + b; }");
    REQUIRE(p->children.size() == 1);
    const Node& fn = *p->children[0];
    CHECK(fn.kind == NodeKind::FunctionDeclaration);
    CHECK(fn.text == "add");
    REQUIRE(fn.children.size() == 3);  // 2 params + body
    CHECK(fn.children[0]->text == "a");
    CHECK(fn.children[2]->kind == NodeKind::BlockStatement);
    CHECK(fn.start == 0);
    CHECK(fn.end == 36);
}

TEST_CASE("parser: var declarations and declarators") {
    auto p = parse_ok("var x = 1, y;");
    const Node& d = *p->children[0];
    CHECK(d.kind == NodeKind::VariableDeclaration);
    CHECK(d.text == "var");
    REQUIRE(d.children.size() == 2);
    CHECK(d.children[0]->text == "x");
    CHECK(d.children[1]->text == "y");
}

TEST_CASE("parser: precedence") {
    auto p = parse_ok("r = 1 + 2 * 3;");
    const Node& assign = *p->children[0]->children[0];
    REQUIRE(assign.kind == NodeKind::AssignmentExpression);
    const Node& plus = *assign.children[1];
    CHECK(plus.text == "+");
    CHECK(plus.children[1]->text == "*");
}

TEST_CASE("parser: member chains and calls") {
    auto p = parse_ok("a.b.c(1)[d](e);");
    const Node& call = *p->children[0]->children[0];
    CHECK(call.kind == NodeKind::CallExpression);
    const Node& idx = *call.children[0];
    CHECK(idx.kind == NodeKind::MemberExpression);  // a.b.c(1)[d]
    CHECK(idx.computed);
    CHECK(idx.children[0]->kind == NodeKind::CallExpression);  // a.b.c(1)
}

TEST_CASE("parser: es6 class with methods and fields") {
    auto p = parse_ok(R"(class A extends B {
        constructor(x) { this.x = x; }
        get size() { return 1; }
        static make() { return new A(0); }
        count = 0;
    })");
    const Node& cls = *p->children[0];
    CHECK(cls.kind == NodeKind::ClassDeclaration);
    CHECK(cls.text == "A");
    int methods = 0, fields = 0;
    for (const auto& c : cls.children) {
        if (c->kind == NodeKind::MethodDefinition) ++methods;
        if (c->kind == NodeKind::Property) ++fields;
    }
    CHECK(methods == 3);
    CHECK(fields == 1);
}

TEST_CASE("parser: arrow functions") {
    auto p = parse_ok("f = (a, b) => a + b; g = x => ({v: x}); h = () => {};");
    CHECK(p->children.size() == 3);
    const Node& f = *p->children[0]->children[0]->children[1];
    CHECK(f.kind == NodeKind::ArrowFunctionExpression);
    REQUIRE(f.children.size() == 3);
    CHECK(f.children[2]->kind == NodeKind::BinaryExpression);
}

TEST_CASE("parser: destructuring and defaults") {
    parse_ok("const {a, b: c, d = 1} = obj; const [x, , ...rest] = arr;");
    parse_ok("function f({a, b} = {}, [c] = []) {}");
}

TEST_CASE("parser: control flow statements") {
    parse_ok(R"(
        for (var i = 0; i < 10; i++) { if (i % 2) continue; else break; }
        for (var k in o) {}
        for (const v of xs) {}
        while (a) { do { b(); } while (c); }
        switch (x) { case 1: y(); break; default: z(); }
        try { t(); } catch (e) { h(e); } finally { f(); }
        label: throw new Error('no');
    )");
}

TEST_CASE("parser: import and export forms") {
    auto p = parse_ok(R"(
        import d from './d';
        import * as ns from 'pkg';
        import {a, b as c} from '../u/v.js';
        export default function main() {}
        export const k = 1;
        export {a, b};
    )");
    const Node& i1 = *p->children[0];
    CHECK(i1.kind == NodeKind::ImportDeclaration);
    CHECK(i1.text == "'./d'");
    REQUIRE(i1.children.size() == 1);
    CHECK(i1.children[0]->text == "d");
    const Node& i3 = *p->children[2];
    REQUIRE(i3.children.size() == 2);
    CHECK(i3.children[1]->text == "c");  // local name of "b as c"
}

TEST_CASE("parser: object literals with methods and shorthand") {
    auto p = parse_ok("o = {a, b: 1, c() { return 2; }, get d() { return 3; }, ...rest};");
    const Node& obj = *p->children[0]->children[0]->children[1];
    CHECK(obj.kind == NodeKind::ObjectExpression);
    CHECK(obj.children.size() == 5);
}

TEST_CASE("parser: ASI handles missing semicolons") {
    auto p = parse_ok("var a = 1\nvar b = 2\nf()\nreturn_like()");
    CHECK(p->children.size() == 4);
    // return on its own line takes no argument
    auto q = parse_ok("function f() { return\n1 }");
    const Node& body = *q->children[0]->children.back();
    CHECK(body.children[0]->kind == NodeKind::ReturnStatement);
    CHECK(body.children[0]->children.empty());
}

TEST_CASE("parser: async and generators") {
    parse_ok("async function f() { await g(); } function* gen() { yield 1; }");
    parse_ok("h = async (x) => { await x; };");
}

TEST_CASE("parser: new expressions") {
    auto p = parse_ok("a = new Foo(1); b = new ns.Bar; c = new (pick())();");
    const Node& n1 = *p->children[0]->children[0]->children[1];
    CHECK(n1.kind == NodeKind::NewExpression);
    CHECK(n1.children[0]->text == "Foo");
}

TEST_CASE("parser: syntax error carries position") {
    try {
        parse("function (");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line >= 1);
    }
}

TEST_CASE("parser: prototype and exports idioms parse") {
    parse_ok(R"(
        function Stack() { this.items = []; }
        Stack.prototype.push = function (v) { this.items.push(v); };
        Stack.prototype = { pop: function () { return this.items.pop(); } };
        module.exports = Stack;
        exports.helper = function () {};
        var fs = require('fs');
    )");
}
