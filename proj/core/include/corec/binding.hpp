#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "corec/entity.hpp"

namespace corec {

// Resolved access to another entity: target signature plus edge label.
struct ResolvedRef {
    std::string signature;
    char label;  // 'f' (function access) or 'v' (variable access)
    auto operator<=>(const ResolvedRef&) const = default;
};

struct ProjectIndex {
    // (module_path, name within module) -> full signature. Method names are
    // registered both owner-qualified ("Stack.push") and, when unambiguous at
    // first registration, by their simple name.
    std::map<std::pair<std::string, std::string>, std::string> definitions;
    // module -> local alias -> imported module path
    std::map<std::string, std::map<std::string, std::string>> imports;
    // every known entity signature, with its kind
    std::map<std::string, EntityKind> kinds;

    bool has(const std::string& signature) const { return kinds.count(signature) > 0; }
};

/// Indexes every Class/Function/Variable definition and import alias across
/// the edited files of one commit (both versions of each file).
ProjectIndex build_index(const std::vector<std::pair<std::string, const EntitySet*>>& sets);

/// Best-effort resolution of an entity's references: same-module names first,
/// then alias.member through the module's import table. Unresolved names and
/// self-references are dropped.
std::set<ResolvedRef> resolve_references(const Entity& entity, const ProjectIndex& index);

}  // namespace corec
