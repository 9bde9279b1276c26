#include "corec/entity.hpp"

#include <algorithm>
#include <functional>

#include "corec/js/parser.hpp"
#include "corec/util.hpp"

namespace corec {

using js::Node;
using js::NodeKind;

namespace {

bool is_function_expr(const Node* n) {
    return n && (n->kind == NodeKind::FunctionExpression ||
                 n->kind == NodeKind::ArrowFunctionExpression);
}

bool is_class_expr(const Node* n) { return n && n->kind == NodeKind::ClassExpression; }

std::string strip_quotes(const std::string& raw) {
    if (raw.size() >= 2 && (raw.front() == '"' || raw.front() == '\'' || raw.front() == '`'))
        return raw.substr(1, raw.size() - 2);
    return raw;
}

// Flattens a non-computed member chain of identifiers (optionally rooted at
// `this`) into its dotted parts. Returns empty when the chain is not simple.
std::vector<std::string> member_chain(const Node& n) {
    std::vector<std::string> parts;
    const Node* cur = &n;
    while (cur->kind == NodeKind::MemberExpression && !cur->computed) {
        const Node* prop = cur->children[1].get();
        if (!prop || prop->kind != NodeKind::Identifier) return {};
        parts.push_back(prop->text);
        cur = cur->children[0].get();
    }
    if (cur->kind == NodeKind::Identifier)
        parts.push_back(cur->text);
    else if (cur->kind == NodeKind::ThisExpression)
        parts.push_back("this");
    else
        return {};
    std::reverse(parts.begin(), parts.end());
    return parts;
}

bool is_require_call(const Node* n) {
    return n && n->kind == NodeKind::CallExpression && !n->children.empty() &&
           n->children[0]->kind == NodeKind::Identifier && n->children[0]->text == "require" &&
           n->children.size() >= 2 && n->children[1]->kind == NodeKind::StringLiteral;
}

const char* literal_kind_token(const Node& n) {
    switch (n.kind) {
        case NodeKind::NumberLiteral:
            return "number";
        case NodeKind::StringLiteral:
        case NodeKind::TemplateLiteral:
            return "string";
        case NodeKind::BooleanLiteral:
            return "boolean";
        case NodeKind::NullLiteral:
            return "null";
        case NodeKind::ArrayExpression:
            return "array";
        case NodeKind::ObjectExpression:
            return "object";
        case NodeKind::RegexLiteral:
            return "regexp";
        case NodeKind::FunctionExpression:
        case NodeKind::ArrowFunctionExpression:
            return "function";
        default:
            return nullptr;
    }
}

// Single-token type of a value expression: literal kind or `new X` ctor name.
std::string value_type_token(const Node* n) {
    if (!n) return kUnknownType;
    if (const char* lit = literal_kind_token(*n)) return lit;
    if (n->kind == NodeKind::NewExpression && !n->children.empty()) {
        auto parts = member_chain(*n->children[0]);
        if (!parts.empty()) return parts.back();
    }
    return kUnknownType;
}

bool is_statement_node(NodeKind k) {
    switch (k) {
        case NodeKind::VariableDeclaration:
        case NodeKind::ExpressionStatement:
        case NodeKind::ReturnStatement:
        case NodeKind::IfStatement:
        case NodeKind::ForStatement:
        case NodeKind::ForInStatement:
        case NodeKind::ForOfStatement:
        case NodeKind::WhileStatement:
        case NodeKind::DoWhileStatement:
        case NodeKind::BreakStatement:
        case NodeKind::ContinueStatement:
        case NodeKind::ThrowStatement:
        case NodeKind::TryStatement:
        case NodeKind::SwitchStatement:
        case NodeKind::LabeledStatement:
        case NodeKind::DebuggerStatement:
            return true;
        default:
            return false;
    }
}

class Extractor {
public:
    Extractor(const ParsedFile& file, std::string module_path)
        : file_(file), module_(std::move(module_path)) {}

    EntitySet run() {
        collect_file_facts(*file_.ast);
        const auto& stmts = file_.ast->children;
        std::vector<const Node*> block_run;
        auto flush_block = [&] {
            if (!block_run.empty()) emit_block(block_run);
            block_run.clear();
        };
        for (const auto& s : stmts) {
            if (!s) continue;
            if (classify_top_level(*s)) {
                flush_block();
            } else if (s->kind == NodeKind::ImportDeclaration ||
                       s->kind == NodeKind::ExportNamedDeclaration ||
                       s->kind == NodeKind::ExportDefaultDeclaration ||
                       s->kind == NodeKind::EmptyStatement) {
                flush_block();
            } else {
                block_run.push_back(s.get());
            }
        }
        flush_block();
        std::sort(set_.entities.begin(), set_.entities.end(),
                  [](const Entity& a, const Entity& b) {
                      return std::tie(a.start, a.end, a.signature) <
                             std::tie(b.start, b.end, b.signature);
                  });
        set_.by_signature.clear();
        for (std::size_t i = 0; i < set_.entities.size(); ++i) {
            const Entity& e = set_.entities[i];
            if (e.kind != EntityKind::Block) set_.by_signature.emplace(e.signature, i);
        }
        return std::move(set_);
    }

private:
    const ParsedFile& file_;
    std::string module_;
    EntitySet set_;
    std::set<std::string> class_like_;  // names with prototype references or constructor uses

    // ---- whole-file pass ---------------------------------------------------

    void collect_file_facts(const Node& root) {
        js::walk(root, [&](const Node& n) {
            if (n.kind == NodeKind::MemberExpression && !n.computed &&
                n.children[1]->kind == NodeKind::Identifier &&
                n.children[1]->text == "prototype" &&
                n.children[0]->kind == NodeKind::Identifier) {
                class_like_.insert(n.children[0]->text);
            }
            if (n.kind == NodeKind::NewExpression && !n.children.empty() &&
                n.children[0]->kind == NodeKind::Identifier) {
                class_like_.insert(n.children[0]->text);
            }
            if (n.kind == NodeKind::ImportDeclaration && !n.text.empty()) {
                std::string mod = resolve_module_specifier(module_, strip_quotes(n.text));
                for (const auto& spec : n.children) set_.imports.emplace(spec->text, mod);
            }
            if (n.kind == NodeKind::VariableDeclarator && !n.text.empty() &&
                !n.children.empty() && is_require_call(n.children.back().get())) {
                std::string mod = resolve_module_specifier(
                    module_, strip_quotes(n.children.back()->children[1]->text));
                set_.imports.emplace(n.text, mod);
            }
        });
    }

    // ---- top-level classification -----------------------------------------

    // Returns true when the statement defines one or more entities (and thus
    // never belongs to a statement block).
    bool classify_top_level(const Node& s) {
        switch (s.kind) {
            case NodeKind::FunctionDeclaration:
                emit_function_or_class(s.text, s, func_body(s), DefinitionStyle::FunctionDeclaration);
                return true;
            case NodeKind::ClassDeclaration:
                emit_es6_class(s, s.text);
                return true;
            case NodeKind::VariableDeclaration: {
                bool any = false;
                for (const auto& d : s.children) any |= classify_declarator(*d);
                return any;
            }
            case NodeKind::ExpressionStatement: {
                const Node& e = *s.children[0];
                if (e.kind == NodeKind::AssignmentExpression && e.text == "=")
                    return classify_assignment(e);
                return false;
            }
            case NodeKind::ExportNamedDeclaration:
            case NodeKind::ExportDefaultDeclaration:
                for (const auto& c : s.children)
                    if (c && (c->kind == NodeKind::FunctionDeclaration ||
                              c->kind == NodeKind::ClassDeclaration ||
                              c->kind == NodeKind::VariableDeclaration))
                        classify_top_level(*c);
                return true;
            default:
                return false;
        }
    }

    bool classify_declarator(const Node& d) {
        if (d.text.empty()) return false;  // destructuring declarators are not entities
        const Node* init =
            d.children.empty() ? nullptr : d.children.back().get();
        if (is_require_call(init)) return true;  // required module, deliberately skipped
        if (d.children.size() >= 1 && d.children[0]->kind == NodeKind::ImportDeclaration)
            return true;
        if (is_function_expr(init)) {
            emit_function_or_class(d.text, d, init, DefinitionStyle::VariableDeclaredFunction);
            return true;
        }
        if (is_class_expr(init)) {
            emit_es6_class(*init, d.text, &d);
            return true;
        }
        if (init && init->kind == NodeKind::CallExpression && returns_function_heuristic(*init)) {
            emit_function_entity(module_ + "." + d.text, d,
                                 wrapped_function_arg(*init), DefinitionStyle::VariableDeclaredFunction);
            return true;
        }
        emit_variable(module_ + "." + d.text, d, init);
        return true;
    }

    // Rule 1, second criterion: a call whose callee is a require/import-bound
    // wrapper and that receives at least one function-valued argument.
    bool returns_function_heuristic(const Node& call) const {
        if (call.children.empty()) return false;
        const Node& callee = *call.children[0];
        std::string root;
        if (callee.kind == NodeKind::Identifier) {
            root = callee.text;
        } else {
            auto parts = member_chain(callee);
            if (parts.empty()) return false;
            root = parts.front();
        }
        if (!set_.imports.count(root)) return false;
        for (std::size_t i = 1; i < call.children.size(); ++i)
            if (is_function_expr(call.children[i].get())) return true;
        return false;
    }

    const Node* wrapped_function_arg(const Node& call) const {
        for (std::size_t i = 1; i < call.children.size(); ++i)
            if (is_function_expr(call.children[i].get())) return call.children[i].get();
        return nullptr;
    }

    bool classify_assignment(const Node& assign) {
        const Node& lhs = *assign.children[0];
        const Node* rhs = assign.children[1].get();
        if (lhs.kind == NodeKind::Identifier) {
            if (is_function_expr(rhs)) {
                emit_function_or_class(lhs.text, assign, rhs,
                                       DefinitionStyle::VariableDeclaredFunction);
                return true;
            }
            if (is_class_expr(rhs)) {
                emit_es6_class(*rhs, lhs.text, &assign);
                return true;
            }
            if (is_require_call(rhs)) return true;
            emit_variable(module_ + "." + lhs.text, assign, rhs);
            return true;
        }
        auto parts = member_chain(lhs);
        if (parts.empty()) return false;
        // X.prototype.foo = function
        if (parts.size() == 3 && parts[1] == "prototype" && is_function_expr(rhs)) {
            emit_function_entity(module_ + "." + parts[0] + "." + parts[2], assign, rhs,
                                 DefinitionStyle::PrototypeFunction, parts[0]);
            return true;
        }
        // X.prototype = { foo: function(...) {...}, ... }
        if (parts.size() == 2 && parts[1] == "prototype" && rhs &&
            rhs->kind == NodeKind::ObjectExpression) {
            emit_object_methods(*rhs, parts[0], DefinitionStyle::PrototypeFunction);
            return true;
        }
        // exports.foo = function / module.exports.foo = function
        bool exports_member =
            (parts.size() == 2 && parts[0] == "exports") ||
            (parts.size() == 3 && parts[0] == "module" && parts[1] == "exports");
        if (exports_member && is_function_expr(rhs)) {
            emit_function_entity(module_ + "." + parts.back(), assign, rhs,
                                 DefinitionStyle::ExportsFunction);
            return true;
        }
        // module.exports = { foo: function(...) {...} }
        if (parts.size() == 2 && parts[0] == "module" && parts[1] == "exports" && rhs &&
            rhs->kind == NodeKind::ObjectExpression) {
            emit_object_methods(*rhs, "", DefinitionStyle::ExportsFunction);
            return true;
        }
        if (exports_member && rhs && !is_function_expr(rhs)) {
            emit_variable(module_ + "." + parts.back(), assign, rhs);
            return true;
        }
        // a.b = function(...) {...}
        if (parts.size() == 2 && parts[0] != "this" && is_function_expr(rhs)) {
            emit_function_entity(module_ + "." + parts[0] + "." + parts[1], assign, rhs,
                                 DefinitionStyle::VariableDeclaredFunction, parts[0]);
            return true;
        }
        return false;
    }

    // ---- emission ----------------------------------------------------------

    static const Node* func_body(const Node& fn) {
        return fn.children.empty() ? nullptr : fn.children.back().get();
    }

    void emit_function_or_class(const std::string& name, const Node& range_node,
                                const Node* fn_node_or_body, DefinitionStyle style) {
        if (name.empty()) return;
        const Node* fn = nullptr;
        if (range_node.kind == NodeKind::FunctionDeclaration) {
            fn = &range_node;
        } else {
            // range_node is a declarator/assignment whose init is the function.
            for (const auto& c : range_node.children)
                if (is_function_expr(c.get())) fn = c.get();
        }
        (void)fn_node_or_body;
        if (class_like_.count(name)) {
            // Prototype-referenced or constructor-used: reclassify as a class
            // whose body is the constructor function.
            Entity cls = base_entity(EntityKind::Class, module_ + "." + name, range_node);
            push(std::move(cls));
            emit_function_entity(module_ + "." + name + "." + name, range_node, fn,
                                 style, name);
            return;
        }
        emit_function_entity(module_ + "." + name, range_node, fn, style);
    }

    // fn may be null (heuristic call-wrapper case); the range node then stands in.
    void emit_function_entity(const std::string& signature, const Node& range_node, const Node* fn,
                              DefinitionStyle style, const std::string& owner = "") {
        Entity e = base_entity(EntityKind::Function, signature, range_node);
        e.style = style;
        const Node* body = nullptr;
        if (fn && fn->is_function_like()) {
            for (std::size_t i = 0; i + 1 < fn->children.size(); ++i)
                e.parameters.push_back(param_of(*fn->children[i]));
            body = func_body(*fn);
        }
        collect_refs_and_types(e, fn ? *fn : range_node, owner, body);
        e.statements = statements_of(body ? *body : range_node);
        push(std::move(e));
    }

    void emit_es6_class(const Node& cls, const std::string& name, const Node* range_node = nullptr) {
        if (name.empty()) return;
        const Node& rn = range_node ? *range_node : cls;
        push(base_entity(EntityKind::Class, module_ + "." + name, rn));
        for (const auto& m : cls.children) {
            if (!m) continue;
            if (m->kind == NodeKind::MethodDefinition && !m->computed) {
                std::string method = m->text == "constructor" ? name : m->text;
                emit_function_entity(module_ + "." + name + "." + method, *m, m.get(),
                                     DefinitionStyle::MethodDefinition, name);
                if (m->text == "constructor") emit_constructor_fields(*m, name);
            } else if (m->kind == NodeKind::Property && !m->computed && !m->text.empty()) {
                emit_variable(module_ + "." + name + "." + m->text, *m,
                              m->children.empty() ? nullptr : m->children[0].get());
            }
        }
    }

    // this.x = ... / self.x = ... inside a constructor body define class fields.
    void emit_constructor_fields(const Node& ctor, const std::string& owner) {
        const Node* body = func_body(ctor);
        if (!body) return;
        for (const auto& s : body->children) {
            if (!s || s->kind != NodeKind::ExpressionStatement) continue;
            const Node& e = *s->children[0];
            if (e.kind != NodeKind::AssignmentExpression || e.text != "=") continue;
            auto parts = member_chain(*e.children[0]);
            if (parts.size() == 2 && (parts[0] == "this" || parts[0] == "self"))
                emit_variable(module_ + "." + owner + "." + parts[1], *s, e.children[1].get());
        }
    }

    void emit_object_methods(const Node& obj, const std::string& owner, DefinitionStyle style) {
        for (const auto& p : obj.children) {
            if (!p || p->kind != NodeKind::Property || p->computed || p->text.empty()) continue;
            const Node* value = p->children.empty() ? nullptr : p->children.back().get();
            if (!is_function_expr(value)) continue;
            std::string sig = owner.empty() ? module_ + "." + p->text
                                            : module_ + "." + owner + "." + p->text;
            emit_function_entity(sig, *p, value, style, owner);
        }
    }

    void emit_variable(const std::string& signature, const Node& range_node, const Node* init) {
        Entity e = base_entity(EntityKind::Variable, signature, range_node);
        if (init) {
            collect_refs(*init, e.referenced_names, "");
            collect_type_tokens(*init, e.type_tokens);
            e.return_type_token = value_type_token(init);
        }
        e.statements = {collapse_whitespace(slice(range_node))};
        push(std::move(e));
    }

    void emit_block(const std::vector<const Node*>& run) {
        Entity e;
        e.kind = EntityKind::Block;
        e.module_path = module_;
        e.start = run.front()->start;
        e.end = run.back()->end;
        e.signature = module_ + "." + std::to_string(e.start);
        e.token_sequence = tokens_in(e.start, e.end);
        for (const Node* s : run) {
            collect_refs(*s, e.referenced_names, "");
            auto stmts = statements_of(*s);
            e.statements.insert(e.statements.end(), stmts.begin(), stmts.end());
        }
        set_.entities.push_back(std::move(e));
    }

    Entity base_entity(EntityKind kind, const std::string& signature, const Node& range_node) {
        Entity e;
        e.kind = kind;
        e.signature = signature;
        e.module_path = module_;
        e.start = range_node.start;
        e.end = range_node.end;
        e.token_sequence = tokens_in(e.start, e.end);
        return e;
    }

    void push(Entity&& e) {
        if (e.kind != EntityKind::Block) {
            for (const Entity& other : set_.entities)
                if (other.kind == e.kind && other.signature == e.signature) return;
        }
        set_.entities.push_back(std::move(e));
    }

    // ---- per-entity detail -------------------------------------------------

    Param param_of(const Node& p) {
        Param out;
        if (p.kind == NodeKind::Identifier || p.kind == NodeKind::RestElement) {
            out.name = p.text;
        } else if (p.kind == NodeKind::AssignmentPattern) {
            out.name = p.text;
            if (p.children.size() >= 2) out.type_token = value_type_token(p.children[1].get());
        }
        return out;
    }

    void collect_refs_and_types(Entity& e, const Node& fn, const std::string& owner,
                                const Node* body) {
        const Node& scope = body ? *body : fn;
        collect_refs(scope, e.referenced_names, owner);
        collect_type_tokens(scope, e.type_tokens);
        // Default parameter values contribute references too.
        if (fn.is_function_like())
            for (std::size_t i = 0; i + 1 < fn.children.size(); ++i)
                if (fn.children[i]->kind == NodeKind::AssignmentPattern &&
                    fn.children[i]->children.size() >= 2)
                    collect_refs(*fn.children[i]->children[1], e.referenced_names, owner);
        e.return_type_token = infer_return_type(body, e.parameters);
        // Parameters without a default-derived type: look for `p = new T()` /
        // literal reassignments in the body.
        for (Param& p : e.parameters) {
            if (p.type_token != kUnknownType || !body) continue;
            infer_param_type_from_body(*body, p);
        }
    }

    std::string infer_return_type(const Node* body, const std::vector<Param>& params) {
        if (!body) return kUnknownType;
        std::string result = kUnknownType;
        std::function<void(const Node&)> visit = [&](const Node& n) {
            if (result != kUnknownType) return;
            if (n.is_function_like()) return;  // nested function returns do not count
            if (n.kind == NodeKind::ReturnStatement && !n.children.empty()) {
                std::string t = value_type_token(n.children[0].get());
                if (t == kUnknownType && n.children[0]->kind == NodeKind::Identifier)
                    for (const Param& p : params)
                        if (p.name == n.children[0]->text) t = p.type_token;
                if (t != kUnknownType) {
                    result = t;
                    return;
                }
            }
            for (const auto& c : n.children)
                if (c) visit(*c);
        };
        for (const auto& c : body->children)
            if (c) visit(*c);
        return result;
    }

    void infer_param_type_from_body(const Node& body, Param& p) {
        js::walk(body, [&](const Node& n) {
            if (p.type_token != kUnknownType) return;
            if (n.kind == NodeKind::AssignmentExpression && n.text == "=" &&
                n.children[0]->kind == NodeKind::Identifier && n.children[0]->text == p.name) {
                std::string t = value_type_token(n.children[1].get());
                if (t != kUnknownType) p.type_token = t;
            }
        });
    }

    void collect_type_tokens(const Node& scope, std::set<std::string>& out) {
        js::walk(scope, [&](const Node& n) {
            if (const char* lit = literal_kind_token(n)) out.insert(lit);
            if (n.kind == NodeKind::NewExpression && !n.children.empty()) {
                auto parts = member_chain(*n.children[0]);
                if (!parts.empty()) out.insert(parts.back());
            }
            if (n.kind == NodeKind::Identifier && set_.imports.count(n.text)) out.insert(n.text);
        });
    }

    // Reference collection with call/read/class-use classification. `owner`
    // qualifies `this.x` references inside class methods.
    void collect_refs(const Node& n, std::set<Reference>& out, const std::string& owner) {
        switch (n.kind) {
            case NodeKind::CallExpression: {
                const Node& callee = *n.children[0];
                if (callee.kind == NodeKind::Identifier) {
                    out.insert({callee.text, RefKind::Call});
                } else if (callee.kind == NodeKind::MemberExpression && !callee.computed) {
                    auto parts = member_chain(callee);
                    if (parts.size() == 2) {
                        if (parts[0] == "this" && !owner.empty())
                            out.insert({owner + "." + parts[1], RefKind::Call});
                        else if (parts[0] != "this")
                            out.insert({parts[0] + "." + parts[1], RefKind::Call});
                    } else {
                        collect_refs(*callee.children[0], out, owner);
                    }
                } else {
                    collect_refs(callee, out, owner);
                }
                for (std::size_t i = 1; i < n.children.size(); ++i)
                    if (n.children[i]) collect_refs(*n.children[i], out, owner);
                return;
            }
            case NodeKind::NewExpression: {
                if (!n.children.empty()) {
                    auto parts = member_chain(*n.children[0]);
                    if (parts.size() == 1)
                        out.insert({parts[0], RefKind::ClassUse});
                    else if (parts.size() == 2 && parts[0] != "this")
                        out.insert({parts[0] + "." + parts[1], RefKind::ClassUse});
                }
                for (std::size_t i = 1; i < n.children.size(); ++i)
                    if (n.children[i]) collect_refs(*n.children[i], out, owner);
                return;
            }
            case NodeKind::MemberExpression: {
                if (!n.computed) {
                    auto parts = member_chain(n);
                    if (parts.size() == 2) {
                        if (parts[0] == "this" && !owner.empty())
                            out.insert({owner + "." + parts[1], RefKind::ReadWrite});
                        else if (parts[0] != "this") {
                            out.insert({parts[0], RefKind::ReadWrite});
                            out.insert({parts[0] + "." + parts[1], RefKind::ReadWrite});
                        }
                        return;
                    }
                }
                collect_refs(*n.children[0], out, owner);
                if (n.computed && n.children.size() > 1) collect_refs(*n.children[1], out, owner);
                return;
            }
            case NodeKind::Identifier:
                if (!n.text.empty()) out.insert({n.text, RefKind::ReadWrite});
                return;
            case NodeKind::Property:
                // Skip non-computed keys.
                for (const auto& c : n.children)
                    if (c) collect_refs(*c, out, owner);
                return;
            case NodeKind::VariableDeclarator:
                // Skip the bound name; patterns bind, they do not reference.
                for (const auto& c : n.children)
                    if (c && c->kind != NodeKind::ObjectPattern && c->kind != NodeKind::ArrayPattern)
                        collect_refs(*c, out, owner);
                return;
            case NodeKind::ObjectPattern:
            case NodeKind::ArrayPattern:
            case NodeKind::RestElement:
            case NodeKind::ImportDeclaration:
                return;
            case NodeKind::FunctionDeclaration:
            case NodeKind::FunctionExpression:
            case NodeKind::ArrowFunctionExpression:
            case NodeKind::MethodDefinition: {
                // Skip parameter names; recurse into defaults and the body.
                for (std::size_t i = 0; i + 1 < n.children.size(); ++i) {
                    const Node* p = n.children[i].get();
                    if (p && p->kind == NodeKind::AssignmentPattern && p->children.size() >= 2)
                        collect_refs(*p->children[1], out, owner);
                }
                if (!n.children.empty() && n.children.back())
                    collect_refs(*n.children.back(), out, owner);
                return;
            }
            default:
                for (const auto& c : n.children)
                    if (c) collect_refs(*c, out, owner);
                return;
        }
    }

    std::string_view slice(const Node& n) const {
        return std::string_view(file_.source).substr(n.start, n.end - n.start);
    }

    std::vector<std::string> tokens_in(std::size_t start, std::size_t end) const {
        std::vector<std::string> out;
        for (const auto& t : file_.tokens) {
            if (t.kind == js::TokenKind::EndOfFile) break;
            if (t.start >= start && t.end <= end) out.push_back(t.text);
        }
        return out;
    }

    std::vector<std::string> statements_of(const Node& scope) const {
        std::vector<std::string> out;
        js::walk(scope, [&](const Node& n) {
            if (is_statement_node(n.kind)) out.push_back(collapse_whitespace(slice(n)));
        });
        // walk() visits pre-order, so statements come out in source order.
        return out;
    }
};

}  // namespace

std::optional<ParseFailure> try_parse(std::string source, ParsedFile& out) {
    out.source = std::move(source);
    try {
        out.tokens = js::lex(out.source);
        out.ast = js::parse(out.source);
    } catch (const js::LexError& e) {
        return ParseFailure{e.line, e.column, e.what()};
    } catch (const js::ParseError& e) {
        return ParseFailure{e.line, e.column, e.what()};
    }
    return std::nullopt;
}

EntitySet extract_entities(const ParsedFile& file, const std::string& module_path) {
    return Extractor(file, module_path).run();
}

const std::set<std::string>& infer_type_tokens(const Entity& entity) { return entity.type_tokens; }

std::string resolve_module_specifier(const std::string& current_module, std::string spec) {
    if (spec.rfind("./", 0) != 0 && spec.rfind("../", 0) != 0) return spec;
    // Directory of the current module, as dot-separated segments.
    auto segments = split(current_module, '.');
    if (!segments.empty()) segments.pop_back();
    if (spec.size() >= 3 && spec.compare(spec.size() - 3, 3, ".js") == 0)
        spec.resize(spec.size() - 3);
    for (const auto& part : split(spec, '/')) {
        if (part == "." || part.empty()) continue;
        if (part == "..") {
            if (!segments.empty()) segments.pop_back();
            continue;
        }
        segments.push_back(part);
    }
    std::string out;
    for (const auto& s : segments) {
        if (!out.empty()) out.push_back('.');
        out += s;
    }
    return out;
}

}  // namespace corec
