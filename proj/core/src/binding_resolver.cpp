#include "corec/binding.hpp"

namespace corec {

namespace {

// Name of an entity within its module: the signature minus "module_path.".
std::string local_name(const Entity& e) {
    if (e.signature.size() > e.module_path.size() + 1 &&
        e.signature.compare(0, e.module_path.size(), e.module_path) == 0)
        return e.signature.substr(e.module_path.size() + 1);
    return e.signature;
}

}  // namespace

ProjectIndex build_index(const std::vector<std::pair<std::string, const EntitySet*>>& sets) {
    ProjectIndex idx;
    for (const auto& [module, set] : sets) {
        for (const Entity& e : set->entities) {
            if (e.kind == EntityKind::Block) continue;
            std::string name = local_name(e);
            idx.definitions.emplace(std::make_pair(module, name), e.signature);
            idx.kinds.emplace(e.signature, e.kind);
            // Owner-qualified members are reachable by simple name too when
            // nothing else claims it (e.g. `push` for Stack.push).
            auto dot = name.rfind('.');
            if (dot != std::string::npos)
                idx.definitions.emplace(std::make_pair(module, name.substr(dot + 1)),
                                        e.signature);
        }
        for (const auto& [alias, target] : set->imports) idx.imports[module][alias] = target;
    }
    return idx;
}

std::set<ResolvedRef> resolve_references(const Entity& entity, const ProjectIndex& index) {
    std::set<ResolvedRef> out;
    const auto* module_imports = [&]() -> const std::map<std::string, std::string>* {
        auto it = index.imports.find(entity.module_path);
        return it == index.imports.end() ? nullptr : &it->second;
    }();

    for (const Reference& ref : entity.referenced_names) {
        const std::string* sig = nullptr;
        // (1) same-module definition (local definitions shadow imports)
        auto it = index.definitions.find({entity.module_path, ref.name});
        if (it != index.definitions.end()) sig = &it->second;
        // (2) alias.member through the import table
        if (!sig && module_imports) {
            auto dot = ref.name.find('.');
            if (dot != std::string::npos) {
                auto al = module_imports->find(ref.name.substr(0, dot));
                if (al != module_imports->end()) {
                    auto def = index.definitions.find({al->second, ref.name.substr(dot + 1)});
                    if (def != index.definitions.end()) sig = &def->second;
                }
            }
        }
        if (!sig || *sig == entity.signature) continue;

        char label = ref.kind == RefKind::ReadWrite ? 'v' : 'f';
        std::string target = *sig;
        if (ref.kind == RefKind::ClassUse) {
            // `new X(...)` depends on the constructor when one is indexed.
            auto dot = ref.name.rfind('.');
            std::string simple = dot == std::string::npos ? ref.name : ref.name.substr(dot + 1);
            std::string ctor = target + "." + simple;
            if (index.has(ctor)) target = ctor;
        }
        out.insert({std::move(target), label});
    }
    return out;
}

}  // namespace corec
