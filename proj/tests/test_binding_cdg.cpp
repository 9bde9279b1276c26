#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corec/cdg.hpp"
#include "corec/util.hpp"

using namespace corec;

static EntitySet extract(const std::string& src, const std::string& module) {
    ParsedFile pf;
    auto err = try_parse(src, pf);
    REQUIRE(!err.has_value());
    return extract_entities(pf, module);
}

TEST_CASE("index registers definitions and imports") {
    auto a = extract("function foo() {}\nvar bar = 1;", "a");
    auto b = extract("const a = require('./a');\na.foo();", "b");
    auto idx = build_index({{"a", &a}, {"b", &b}});
    CHECK(idx.definitions.at({"a", "foo"}) == "a.foo");
    CHECK(idx.definitions.at({"a", "bar"}) == "a.bar");
    CHECK(idx.imports.at("b").at("a") == "a");
    CHECK(idx.has("a.foo"));
    CHECK(!idx.has("a.nope"));
}

TEST_CASE("same-module call resolves with label f") {
    auto a = extract("function spaces(n) {}\nfunction capture(x) { return spaces(x); }", "t.bm");
    auto idx = build_index({{"t.bm", &a}});
    auto refs = resolve_references(*a.find("t.bm.capture"), idx);
    CHECK(refs.count({"t.bm.spaces", 'f'}));
}

TEST_CASE("cross-module alias member call resolves") {
    auto a = extract("exports.foo = function () {};", "a");
    auto b = extract("const a = require('./a');\nfunction go() { a.foo(); }", "b");
    auto idx = build_index({{"a", &a}, {"b", &b}});
    auto refs = resolve_references(*b.find("b.go"), idx);
    CHECK(refs.count({"a.foo", 'f'}));
}

TEST_CASE("unresolved names are dropped; locals shadow imports") {
    auto a = extract("function foo() { return 1; }", "a");
    auto b = extract(
        "const a = require('./a');\n"
        "function foo() { return 2; }\n"
        "function go() { foo(); missing(); }",
        "b");
    auto idx = build_index({{"a", &a}, {"b", &b}});
    auto refs = resolve_references(*b.find("b.go"), idx);
    CHECK(refs.count({"b.foo", 'f'}));
    CHECK(refs.size() == 1);
}

TEST_CASE("variable reads resolve with label v") {
    auto a = extract("var limit = 10;\nfunction check(n) { return n < limit; }", "a");
    auto idx = build_index({{"a", &a}});
    auto refs = resolve_references(*a.find("a.check"), idx);
    CHECK(refs.count({"a.limit", 'v'}));
}

TEST_CASE("class use resolves to the constructor when present") {
    auto a = extract(
        "class Job { constructor(n) { this.n = n; } }\n"
        "function make() { return new Job(1); }",
        "a");
    auto idx = build_index({{"a", &a}});
    auto refs = resolve_references(*a.find("a.make"), idx);
    CHECK(refs.count({"a.Job.Job", 'f'}));
}

TEST_CASE("class use falls back to the class signature without a constructor") {
    auto a = extract("class Tag {}\nfunction make() { return new Tag(); }", "a");
    auto idx = build_index({{"a", &a}});
    auto refs = resolve_references(*a.find("a.make"), idx);
    CHECK(refs.count({"a.Tag", 'f'}));
}

// The running example: one file adds spaces() and edits capture() to call it;
// another file's top-level block calls capture through a require alias.
struct RunningExample {
    std::vector<EntityEdit> edits;
    ProjectIndex idx;
    std::vector<ChangeDependencyGraph> cdgs;

    RunningExample() {
        auto bm_old = extract(
            "exports.capture = function (options, f) {\n"
            "    var messages = new MessageSet();\n"
            "    return messages;\n"
            "};\n",
            "tools.buildmessage");
        auto bm_new = extract(
            "function spaces(n) {\n"
            "    var s = '';\n"
            "    for (var i = 0; i < n; i++) s += ' ';\n"
            "    return s;\n"
            "}\n"
            "exports.capture = function (options, f) {\n"
            "    var messages = new MessageSet();\n"
            "    debug(spaces(2) + 'in capture');\n"
            "    return messages;\n"
            "};\n",
            "tools.buildmessage");
        auto cp_old = extract(
            "var buildmessage = require('./buildmessage');\n"
            "main.registerCommand({name: 'publish'}, function (options) {\n"
            "    messages = buildmessage.capture(options, doPublish);\n"
            "});\n",
            "tools.commands-packages");
        auto cp_new = extract(
            "var buildmessage = require('./buildmessage');\n"
            "main.registerCommand({name: 'publish'}, function (options) {\n"
            "    messages = buildmessage.capture({title: 'publishing'}, doPublish);\n"
            "});\n",
            "tools.commands-packages");
        auto e1 = diff_entity_sets(bm_old, bm_new);
        auto e2 = diff_entity_sets(cp_old, cp_new);
        edits = e1;
        edits.insert(edits.end(), e2.begin(), e2.end());
        idx = build_index({{"tools.buildmessage", &bm_old},
                           {"tools.buildmessage", &bm_new},
                           {"tools.commands-packages", &cp_old},
                           {"tools.commands-packages", &cp_new}});
        cdgs = build_cdgs(edits, idx);
    }
};

TEST_CASE("running example distills to AF + CF + CB") {
    RunningExample ex;
    std::multiset<EditKind> kinds;
    for (const auto& e : ex.edits) kinds.insert(e.kind);
    CHECK(kinds == std::multiset<EditKind>{EditKind::AF, EditKind::CF, EditKind::CB});
}

TEST_CASE("running example builds one CDG with f-labeled chain") {
    RunningExample ex;
    REQUIRE(ex.cdgs.size() == 1);
    const auto& g = ex.cdgs[0];
    REQUIRE(g.nodes.size() == 3);
    auto id_of = [&](EditKind k) {
        for (const auto& n : g.nodes)
            if (n.edit.kind == k) return n.id;
        REQUIRE(false);
        return -1;
    };
    int cb = id_of(EditKind::CB), cf = id_of(EditKind::CF), af = id_of(EditKind::AF);
    REQUIRE(g.edges.size() == 2);
    CHECK(std::count(g.edges.begin(), g.edges.end(), CdgEdge{cb, cf, 'f'}) == 1);
    CHECK(std::count(g.edges.begin(), g.edges.end(), CdgEdge{cf, af, 'f'}) == 1);
}

TEST_CASE("running example exports a stable text form") {
    RunningExample ex;
    std::string text = export_cdg(ex.cdgs[0]);
    CHECK(text ==
          "node 0 CF tools.buildmessage.capture\n"
          "node 1 AF tools.buildmessage.spaces\n"
          "node 2 CB tools.commands-packages.46\n"
          "edge 0 1 f\n"
          "edge 2 0 f\n");
}

TEST_CASE("single edited entity produces no CDG") {
    auto oldv = extract("function f() { return 1; }", "a");
    auto newv = extract("function f() { return 2; }", "a");
    auto edits = diff_entity_sets(oldv, newv);
    auto idx = build_index({{"a", &oldv}, {"a", &newv}});
    CHECK(build_cdgs(edits, idx).empty());
}

TEST_CASE("two changes without references produce no CDG") {
    auto oldv = extract("function f() { return 1; }\nfunction g() { return 1; }", "a");
    auto newv = extract("function f() { return 2; }\nfunction g() { return 2; }", "a");
    auto edits = diff_entity_sets(oldv, newv);
    auto idx = build_index({{"a", &oldv}, {"a", &newv}});
    CHECK(build_cdgs(edits, idx).empty());
}

TEST_CASE("deleted entities use the old body for edges") {
    auto oldv = extract(
        "function helper() { return 1; }\n"
        "function gone() { return helper(); }",
        "a");
    auto newv = extract("function helper() { return 2; }", "a");
    auto edits = diff_entity_sets(oldv, newv);
    auto idx = build_index({{"a", &oldv}, {"a", &newv}});
    auto cdgs = build_cdgs(edits, idx);
    REQUIRE(cdgs.size() == 1);
    // DF gone -> CF helper
    REQUIRE(cdgs[0].edges.size() == 1);
    CHECK(cdgs[0].nodes[cdgs[0].edges[0].from].edit.kind == EditKind::DF);
    CHECK(cdgs[0].nodes[cdgs[0].edges[0].to].edit.kind == EditKind::CF);
}

TEST_CASE("containment edge links method to its class only without access") {
    auto oldv = extract("class A { m() { return 1; } }", "a");
    auto newv = extract("class A { m() { return 2; } }\nclass B {}", "a");
    // m changed and A unchanged-as-entity: only CF + AC; no containment since
    // the edits are in different classes
    auto edits = diff_entity_sets(oldv, newv);
    auto idx = build_index({{"a", &oldv}, {"a", &newv}});
    CHECK(build_cdgs(edits, idx).empty());
}

TEST_CASE("no self edges") {
    auto oldv = extract("function rec(n) { return n <= 1 ? 1 : rec(n - 1); }\nvar k = 1;", "a");
    auto newv = extract("function rec(n) { return n <= 0 ? 1 : rec(n - 1) * k; }\nvar k = 2;", "a");
    auto edits = diff_entity_sets(oldv, newv);
    auto idx = build_index({{"a", &oldv}, {"a", &newv}});
    for (const auto& g : build_cdgs(edits, idx))
        for (const auto& e : g.edges) CHECK(e.from != e.to);
}
