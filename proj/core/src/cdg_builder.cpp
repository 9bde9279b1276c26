#include "corec/cdg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace corec {

namespace {

// The version of an edited entity whose body sources reference edges: new for
// added/changed nodes, old for deleted ones.
const Entity& ref_body(const EntityEdit& e) {
    return is_deleted(e.kind) ? *e.old_entity : *e.new_entity;
}

bool contains_range(const Entity& outer, const Entity& inner) {
    return outer.module_path == inner.module_path && outer.start <= inner.start &&
           inner.end <= outer.end && !(outer.start == inner.start && outer.end == inner.end);
}

}  // namespace

std::vector<ChangeDependencyGraph> build_cdgs(const std::vector<EntityEdit>& edits,
                                              const ProjectIndex& index) {
    const std::size_t n = edits.size();
    // Signature -> edit position, per version (a block's old and new
    // signatures differ; named C* edits share one signature).
    std::map<std::string, std::size_t> by_sig;
    for (std::size_t i = 0; i < n; ++i) {
        if (edits[i].old_entity) by_sig.emplace(edits[i].old_entity->signature, i);
        if (edits[i].new_entity) by_sig.emplace(edits[i].new_entity->signature, i);
    }

    std::set<std::tuple<std::size_t, std::size_t, char>> edge_set;
    std::set<std::pair<std::size_t, std::size_t>> access_pairs;
    for (std::size_t i = 0; i < n; ++i) {
        for (const ResolvedRef& r : resolve_references(ref_body(edits[i]), index)) {
            auto it = by_sig.find(r.signature);
            if (it == by_sig.end() || it->second == i) continue;
            edge_set.insert({i, it->second, r.label});
            access_pairs.insert({i, it->second});
        }
    }
    // Containment: inner entity depends on the entity that fully covers it.
    // Skipped when an access edge already links the pair.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const Entity& a = ref_body(edits[i]);
            const Entity& b = ref_body(edits[j]);
            if (is_deleted(edits[i].kind) != is_deleted(edits[j].kind)) continue;
            if (!contains_range(b, a)) continue;
            if (access_pairs.count({i, j}) || access_pairs.count({j, i})) continue;
            edge_set.insert({i, j, 'c'});
        }
    }

    // Weakly connected components via union-find.
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (const auto& [a, b, l] : edge_set) parent[find(a)] = find(b);

    std::map<std::size_t, std::vector<std::size_t>> comps;
    for (std::size_t i = 0; i < n; ++i) comps[find(i)].push_back(i);

    std::vector<ChangeDependencyGraph> out;
    for (auto& [root, members] : comps) {
        if (members.size() < 2) continue;
        std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
            return edits[a].signature() < edits[b].signature();
        });
        ChangeDependencyGraph g;
        std::map<std::size_t, int> id_of;
        for (std::size_t m : members) {
            int id = static_cast<int>(g.nodes.size());
            id_of[m] = id;
            g.nodes.push_back({id, edits[m]});
        }
        for (const auto& [a, b, l] : edge_set)
            if (id_of.count(a) && id_of.count(b)) g.edges.push_back({id_of[a], id_of[b], l});
        std::sort(g.edges.begin(), g.edges.end());
        out.push_back(std::move(g));
    }
    // Deterministic order: by first node's signature.
    std::sort(out.begin(), out.end(),
              [](const ChangeDependencyGraph& a, const ChangeDependencyGraph& b) {
                  return a.nodes[0].edit.signature() < b.nodes[0].edit.signature();
              });
    return out;
}

std::string export_cdg(const ChangeDependencyGraph& g) {
    std::ostringstream os;
    for (const CdgNode& n : g.nodes)
        os << "node " << n.id << ' ' << edit_kind_name(n.edit.kind) << ' ' << n.edit.signature()
           << '\n';
    for (const CdgEdge& e : g.edges)
        os << "edge " << e.from << ' ' << e.to << ' '
           << (e.label == 'c' ? "containment" : std::string(1, e.label)) << '\n';
    return os.str();
}

}  // namespace corec
