#include "corec/pattern.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace corec {

namespace {

std::string render(const PatternGraph& g, const std::vector<int>& perm) {
    // perm[i] = new position of node i
    std::ostringstream os;
    std::vector<int> order(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) order[perm[i]] = static_cast<int>(i);
    for (std::size_t p = 0; p < order.size(); ++p) {
        if (p) os << ',';
        os << edit_kind_name(g.nodes[order[p]]);
    }
    std::vector<std::string> es;
    for (const PatternEdge& e : g.edges) {
        std::ostringstream eo;
        eo << perm[e.from] << '>' << perm[e.to] << ':' << e.label;
        es.push_back(eo.str());
    }
    std::sort(es.begin(), es.end());
    for (const auto& e : es) os << ';' << e;
    return os.str();
}

}  // namespace

std::string canonical_key(const PatternGraph& g) {
    std::vector<int> perm(g.nodes.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
        std::string s = render(g, perm);
        if (best.empty() || s < best) best = s;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

PatternGraph shape_of(const ChangeDependencyGraph& g) {
    PatternGraph out;
    for (const CdgNode& n : g.nodes) out.nodes.push_back(n.edit.kind);
    for (const CdgEdge& e : g.edges) out.edges.push_back({e.from, e.to, e.label});
    return out;
}

bool is_subgraph(const PatternGraph& sub, const PatternGraph& g) {
    if (sub.nodes.size() > g.nodes.size()) return false;
    std::vector<int> map(sub.nodes.size(), -1);
    std::vector<bool> used(g.nodes.size(), false);
    // adjacency for quick edge checks
    std::set<std::tuple<int, int, char>> gedges;
    for (const PatternEdge& e : g.edges) gedges.insert({e.from, e.to, e.label});

    std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
        if (i == sub.nodes.size()) return true;
        for (std::size_t j = 0; j < g.nodes.size(); ++j) {
            if (used[j] || g.nodes[j] != sub.nodes[i]) continue;
            bool ok = true;
            for (const PatternEdge& e : sub.edges) {
                if (e.from == static_cast<int>(i) && map[e.to] != -1 &&
                    !gedges.count({static_cast<int>(j), map[e.to], e.label}))
                    ok = false;
                if (e.to == static_cast<int>(i) && map[e.from] != -1 &&
                    !gedges.count({map[e.from], static_cast<int>(j), e.label}))
                    ok = false;
                if (e.from == static_cast<int>(i) && e.to == static_cast<int>(i) &&
                    !gedges.count({static_cast<int>(j), static_cast<int>(j), e.label}))
                    ok = false;
                if (!ok) break;
            }
            if (!ok) continue;
            map[i] = static_cast<int>(j);
            used[j] = true;
            if (go(i + 1)) return true;
            used[j] = false;
            map[i] = -1;
        }
        return false;
    };
    return go(0);
}

namespace {

struct Lcs {
    const PatternGraph& a;
    const PatternGraph& b;
    std::set<std::tuple<int, int, char>> aedges, bedges;
    std::set<std::vector<std::pair<int, int>>> seen;
    std::optional<PatternGraph> best;
    std::string best_key;

    Lcs(const PatternGraph& a_, const PatternGraph& b_) : a(a_), b(b_) {
        for (const PatternEdge& e : a.edges) aedges.insert({e.from, e.to, e.label});
        for (const PatternEdge& e : b.edges) bedges.insert({e.from, e.to, e.label});
    }

    // Pattern induced by a node mapping: all edges common to both sides.
    PatternGraph induced(const std::vector<std::pair<int, int>>& m) const {
        PatternGraph g;
        for (const auto& [na, nb] : m) g.nodes.push_back(a.nodes[na]);
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < m.size(); ++j)
                for (char l : {'f', 'v', 'c'})
                    if (aedges.count({m[i].first, m[j].first, l}) &&
                        bedges.count({m[i].second, m[j].second, l}))
                        g.edges.push_back({static_cast<int>(i), static_cast<int>(j), l});
        return g;
    }

    void consider(const std::vector<std::pair<int, int>>& m) {
        if (m.size() < 2) return;
        PatternGraph g = induced(m);
        if (g.edges.empty()) return;
        std::string key = canonical_key(g);
        if (!best || g.nodes.size() > best->nodes.size() ||
            (g.nodes.size() == best->nodes.size() && key < best_key)) {
            best = std::move(g);
            best_key = std::move(key);
        }
    }

    // Grows a weakly connected mapped region one label-compatible pair at a
    // time; each new pair must connect to the region by a common edge.
    void grow(std::vector<std::pair<int, int>> m, std::vector<bool> ua, std::vector<bool> ub) {
        {
            auto sorted = m;
            std::sort(sorted.begin(), sorted.end());
            if (!seen.insert(sorted).second) return;
        }
        consider(m);
        for (int na = 0; na < static_cast<int>(a.nodes.size()); ++na) {
            if (ua[na]) continue;
            for (int nb = 0; nb < static_cast<int>(b.nodes.size()); ++nb) {
                if (ub[nb] || a.nodes[na] != b.nodes[nb]) continue;
                bool connected = false;
                for (const auto& [ma, mb] : m) {
                    for (char l : {'f', 'v', 'c'}) {
                        if ((aedges.count({na, ma, l}) && bedges.count({nb, mb, l})) ||
                            (aedges.count({ma, na, l}) && bedges.count({mb, nb, l}))) {
                            connected = true;
                            break;
                        }
                    }
                    if (connected) break;
                }
                if (!connected) continue;
                auto m2 = m;
                m2.emplace_back(na, nb);
                auto ua2 = ua, ub2 = ub;
                ua2[na] = ub2[nb] = true;
                grow(std::move(m2), std::move(ua2), std::move(ub2));
            }
        }
    }

    void run() {
        for (int na = 0; na < static_cast<int>(a.nodes.size()); ++na)
            for (int nb = 0; nb < static_cast<int>(b.nodes.size()); ++nb) {
                if (a.nodes[na] != b.nodes[nb]) continue;
                std::vector<bool> ua(a.nodes.size(), false), ub(b.nodes.size(), false);
                ua[na] = ub[nb] = true;
                grow({{na, nb}}, std::move(ua), std::move(ub));
            }
    }
};

}  // namespace

std::optional<PatternGraph> largest_common_subgraph(const ChangeDependencyGraph& g1,
                                                    const ChangeDependencyGraph& g2) {
    PatternGraph a = shape_of(g1), b = shape_of(g2);
    Lcs search(a, b);
    search.run();
    return search.best;
}

std::vector<RecurringChangePattern> mine_rcps(
    const std::map<std::string, std::vector<ChangeDependencyGraph>>& cdgs_by_commit) {
    std::vector<std::string> commits;
    for (const auto& [c, _] : cdgs_by_commit) commits.push_back(c);

    // Candidate patterns from cross-commit pairwise comparison.
    std::map<std::string, PatternGraph> candidates;
    for (std::size_t i = 0; i < commits.size(); ++i)
        for (std::size_t j = i + 1; j < commits.size(); ++j)
            for (const auto& ga : cdgs_by_commit.at(commits[i]))
                for (const auto& gb : cdgs_by_commit.at(commits[j]))
                    if (auto p = largest_common_subgraph(ga, gb))
                        candidates.emplace(canonical_key(*p), std::move(*p));

    std::map<std::string, std::size_t> freq;
    std::map<std::string, std::set<std::string>> commit_hits;
    for (const auto& [commit, cdgs] : cdgs_by_commit) {
        for (const auto& cdg : cdgs) {
            PatternGraph shape = shape_of(cdg);
            std::vector<const std::pair<const std::string, PatternGraph>*> hits;
            for (const auto& kv : candidates)
                if (is_subgraph(kv.second, shape)) hits.push_back(&kv);
            // subsumption: drop any hit embedded in a strictly different hit
            for (const auto* h : hits) {
                bool subsumed = false;
                for (const auto* o : hits)
                    if (o != h && h->first != o->first && is_subgraph(h->second, o->second)) {
                        subsumed = true;
                        break;
                    }
                if (!subsumed) {
                    ++freq[h->first];
                    commit_hits[h->first].insert(commit);
                }
            }
        }
    }

    std::vector<RecurringChangePattern> out;
    for (auto& [key, pattern] : candidates) {
        std::size_t cc = commit_hits[key].size();
        if (cc < 2) continue;
        out.push_back({pattern, key, freq[key], cc});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.commit_count != b.commit_count) return a.commit_count > b.commit_count;
        return a.key < b.key;
    });
    return out;
}

std::string pattern_report(const std::vector<RecurringChangePattern>& rcps) {
    std::ostringstream os;
    for (const auto& r : rcps)
        os << r.key << '\t' << r.frequency << '\t' << r.commit_count << '\n';
    return os.str();
}

std::vector<PatternMatch> detect_patterns(
    const std::vector<EntityEdit>& edits, const std::vector<ChangeDependencyGraph>& cdgs,
    const std::vector<std::pair<std::string, const EntitySet*>>& new_sets) {
    // Unchanged functions of the commit's edited files (new versions).
    std::set<std::string> edited;
    for (const EntityEdit& e : edits) {
        if (e.old_entity) edited.insert(e.old_entity->signature);
        if (e.new_entity) edited.insert(e.new_entity->signature);
    }
    std::vector<Entity> uf_set;
    std::set<std::string> uf_seen;
    for (const auto& [module, set] : new_sets)
        for (const Entity& e : set->entities)
            if (e.kind == EntityKind::Function && !edited.count(e.signature) &&
                uf_seen.insert(e.signature).second)
                uf_set.push_back(e);

    struct Rule {
        const char* id;
        EditKind em;       // depended entity
        EditKind caller;   // co-changed entity kind
        char label;
    };
    static constexpr Rule rules[] = {
        {"P1", EditKind::CF, EditKind::CF, 'f'},
        {"P2", EditKind::AF, EditKind::CF, 'f'},
        {"P3", EditKind::AV, EditKind::CF, 'v'},
        {"P4", EditKind::AV, EditKind::AF, 'v'},
        {"P5", EditKind::CF, EditKind::CB, 'f'},
    };

    std::vector<PatternMatch> out;
    for (const auto& g : cdgs) {
        for (const CdgNode& em : g.nodes) {
            for (const Rule& r : rules) {
                if (em.edit.kind != r.em) continue;
                PatternMatch m;
                m.pattern_id = r.id;
                m.depended = em.edit;
                for (const CdgEdge& e : g.edges) {
                    if (e.to != em.id || e.label != r.label) continue;
                    const CdgNode& src = g.nodes[e.from];
                    if (src.edit.kind == r.caller) m.cf_set.push_back(src.edit);
                }
                if (m.cf_set.empty()) continue;
                m.uf_set = uf_set;
                out.push_back(std::move(m));
            }
        }
    }
    return out;
}

}  // namespace corec
