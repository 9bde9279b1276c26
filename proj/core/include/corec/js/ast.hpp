#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace corec::js {

enum class NodeKind {
    Program,
    // Statements
    VariableDeclaration,  // text = "var" | "let" | "const"; children = declarators
    VariableDeclarator,   // text = name (empty for destructuring); children = [pattern?, init?]
    FunctionDeclaration,  // text = name; children = params..., body
    ClassDeclaration,     // text = name; children = [superclass?, methods...]
    MethodDefinition,     // text = name; children = params..., body
    ExpressionStatement,  // children = [expr]
    BlockStatement,
    ReturnStatement,    // children = [arg?]
    IfStatement,        // children = [test, consequent, alternate?]
    ForStatement,       // children = [init?, test?, update?, body]
    ForInStatement,     // children = [left, right, body]
    ForOfStatement,     // children = [left, right, body]
    WhileStatement,     // children = [test, body]
    DoWhileStatement,   // children = [body, test]
    BreakStatement,
    ContinueStatement,
    ThrowStatement,   // children = [arg]
    TryStatement,     // children = [block, handler?, finalizer?]
    CatchClause,      // text = param name; children = [body]
    SwitchStatement,  // children = [discriminant, cases...]
    SwitchCase,       // children = [test?, consequents...]; text = "default" when no test
    LabeledStatement, // text = label; children = [body]
    EmptyStatement,
    DebuggerStatement,
    ImportDeclaration,       // text = module string raw; children = specifiers (Identifier nodes)
    ExportNamedDeclaration,  // children = [declaration?] or exported Identifier specifiers
    ExportDefaultDeclaration,  // children = [declaration]
    // Expressions
    Identifier,             // text = name
    NumberLiteral,          // text = raw
    StringLiteral,          // text = raw (with quotes)
    BooleanLiteral,         // text = "true" | "false"
    NullLiteral,            // "null" / "undefined"
    RegexLiteral,           // text = raw
    TemplateLiteral,        // text = raw
    ThisExpression,
    SuperExpression,
    ArrayExpression,       // children = elements
    ObjectExpression,      // children = properties
    Property,              // text = key name; children = [value]; "computed"/"shorthand" via flags
    FunctionExpression,    // text = optional name; children = params..., body
    ArrowFunctionExpression,  // children = params..., body (body may be an expression)
    ClassExpression,       // like ClassDeclaration
    UnaryExpression,       // text = operator; children = [arg]
    UpdateExpression,      // text = operator; children = [arg]
    BinaryExpression,      // text = operator; children = [lhs, rhs]
    LogicalExpression,     // text = operator; children = [lhs, rhs]
    AssignmentExpression,  // text = operator; children = [lhs, rhs]
    ConditionalExpression, // children = [test, consequent, alternate]
    CallExpression,        // children = [callee, args...]
    NewExpression,         // children = [callee, args...]
    MemberExpression,      // text = "." or "[]"; children = [object, property]
    SequenceExpression,    // children = exprs
    SpreadElement,         // children = [arg]
    YieldExpression,       // children = [arg?]
    AwaitExpression,       // children = [arg]
    TaggedTemplateExpression,  // children = [tag]; text = template raw
    RestElement,           // text = name
    ArrayPattern,          // children = element patterns
    ObjectPattern,         // children = Property patterns
    AssignmentPattern,     // text = name (if simple); children = [pattern?, default]
};

struct Node;
using NodePtr = std::unique_ptr<Node>;

struct Node {
    NodeKind kind;
    std::size_t start = 0;
    std::size_t end = 0;
    std::string text;  // meaning depends on kind, see above
    bool computed = false;  // member/property with computed key
    std::vector<NodePtr> children;

    Node(NodeKind k, std::size_t s = 0, std::size_t e = 0) : kind(k), start(s), end(e) {}

    bool is_function_like() const {
        return kind == NodeKind::FunctionDeclaration || kind == NodeKind::FunctionExpression ||
               kind == NodeKind::ArrowFunctionExpression || kind == NodeKind::MethodDefinition;
    }
};

struct ParseError : std::runtime_error {
    std::size_t line;
    std::size_t column;
    ParseError(const std::string& msg, std::size_t l, std::size_t c)
        : std::runtime_error(msg), line(l), column(c) {}
};

/// Walks the tree in pre-order, calling fn on every node.
template <typename Fn>
void walk(const Node& node, Fn&& fn) {
    fn(node);
    for (const auto& c : node.children)
        if (c) walk(*c, fn);
}

}  // namespace corec::js
