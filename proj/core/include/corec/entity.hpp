#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "corec/js/ast.hpp"
#include "corec/js/lexer.hpp"

namespace corec {

enum class EntityKind { Class, Function, Variable, Block };

enum class DefinitionStyle {
    FunctionDeclaration,
    VariableDeclaredFunction,
    MethodDefinition,
    PrototypeFunction,
    ExportsFunction,
    NotApplicable,
};

enum class RefKind { Call, ReadWrite, ClassUse };

struct Reference {
    std::string name;  // simple ("foo"), dotted ("alias.foo") or owner-qualified
    RefKind kind;
    auto operator<=>(const Reference&) const = default;
};

inline constexpr const char* kUnknownType = "Unknown";

struct Param {
    std::string name;
    std::string type_token = kUnknownType;
};

struct Entity {
    EntityKind kind = EntityKind::Function;
    std::string signature;    // module[.Owner].name; blocks: module.startOffset
    std::string module_path;
    std::size_t start = 0;    // half-open [start, end) into the source
    std::size_t end = 0;
    DefinitionStyle style = DefinitionStyle::NotApplicable;
    std::vector<Param> parameters;
    std::vector<std::string> token_sequence;
    std::vector<std::string> statements;  // normalized statement slices
    std::set<Reference> referenced_names;
    std::set<std::string> type_tokens;        // Function/Variable: see infer_type_tokens
    std::string return_type_token = kUnknownType;  // Functions: return type; Variables: value kind
};

struct EntitySet {
    std::vector<Entity> entities;
    // Signature -> index into entities. Blocks are excluded (matched by similarity).
    std::map<std::string, std::size_t> by_signature;
    // Module-level import/require aliases: local alias -> imported module path.
    std::map<std::string, std::string> imports;

    const Entity* find(const std::string& signature) const {
        auto it = by_signature.find(signature);
        return it == by_signature.end() ? nullptr : &entities[it->second];
    }
};

struct ParsedFile {
    std::string source;
    js::NodePtr ast;
    std::vector<js::Token> tokens;
};

struct ParseFailure {
    std::size_t line = 0;
    std::size_t column = 0;
    std::string message;
};

/// Parses a JS source file; on syntax errors returns the failure instead of a tree.
std::optional<ParseFailure> try_parse(std::string source, ParsedFile& out);

/// Extracts the four entity kinds from a parsed file using the classification
/// rules: functions (five definition styles), classes (class keyword, prototype
/// reference, or constructor use), module-level variables (excluding required
/// modules), and coalesced top-level statement blocks.
EntitySet extract_entities(const ParsedFile& file, const std::string& module_path);

/// Heuristic type tokens of a Function or Variable entity: literal kinds used in
/// the body, constructor names from `new X(...)`, and require/import aliases used.
const std::set<std::string>& infer_type_tokens(const Entity& entity);

/// Resolves a require/import specifier ("./a", "../x/y.js") against the
/// directory of `current_module` (dot-separated module path). Bare package
/// names are returned unchanged.
std::string resolve_module_specifier(const std::string& current_module, std::string specifier);

}  // namespace corec
