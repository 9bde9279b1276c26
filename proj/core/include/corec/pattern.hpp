#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "corec/cdg.hpp"

namespace corec {

// A CDG shape with the concrete code identity erased: nodes keep only their
// edit-kind label, edges their f/v/containment label.
struct PatternEdge {
    int from = 0;
    int to = 0;
    char label = 'f';
    auto operator<=>(const PatternEdge&) const = default;
};

struct PatternGraph {
    std::vector<EditKind> nodes;
    std::vector<PatternEdge> edges;

    bool operator==(const PatternGraph&) const = default;
};

/// Isomorphism-invariant string form, computed by exhaustive permutation
/// canonicalization. Intended for the small graphs patterns are in practice.
std::string canonical_key(const PatternGraph& g);

/// Erases a CDG to its pattern shape.
PatternGraph shape_of(const ChangeDependencyGraph& g);

/// True when `sub` embeds into `g` (injective node mapping preserving node
/// labels, with every edge of `sub` present in `g` with equal label).
bool is_subgraph(const PatternGraph& sub, const PatternGraph& g);

/// Maximum-node-count weakly connected common subgraph of two CDGs, taking
/// all label-compatible edges over the best node mapping. Absent when no
/// common subgraph reaches two nodes and one edge. Equal-size maxima are
/// broken by lexicographically least canonical key.
std::optional<PatternGraph> largest_common_subgraph(const ChangeDependencyGraph& g1,
                                                    const ChangeDependencyGraph& g2);

struct RecurringChangePattern {
    PatternGraph pattern;
    std::string key;          // canonical_key(pattern)
    std::size_t frequency;    // CDGs where the pattern survives subsumption
    std::size_t commit_count; // distinct commits among those CDGs
};

/// Mines recurring change patterns: pairwise largest common subgraphs across
/// commits, re-matched over every CDG with subsumption de-duplication (when
/// two candidates match inside one CDG and one embeds into the other, only
/// the larger counts there). Patterns seen in ≥2 commits are returned,
/// sorted by commit count descending.
std::vector<RecurringChangePattern> mine_rcps(
    const std::map<std::string, std::vector<ChangeDependencyGraph>>& cdgs_by_commit);

/// One line per RCP: canonical key, frequency, commit count.
std::string pattern_report(const std::vector<RecurringChangePattern>& rcps);

struct PatternMatch {
    std::string pattern_id;  // "P1".."P5"
    EntityEdit depended;     // E_m: CF (P1/P5), AF (P2), AV (P3/P4)
    std::vector<EntityEdit> cf_set;  // co-changed entities pointing at E_m
    std::vector<Entity> uf_set;      // unchanged functions in the edited files
};

/// Detects the five pattern instances in a commit's CDGs. P1: CF callers of a
/// CF; P2: CF callers of an AF; P3: CF accessors of an AV; P4: AF accessors
/// of an AV; P5: CB callers of a CF. Only P1–P3 drive recommendation; P4/P5
/// are reported for statistics.
std::vector<PatternMatch> detect_patterns(
    const std::vector<EntityEdit>& edits, const std::vector<ChangeDependencyGraph>& cdgs,
    const std::vector<std::pair<std::string, const EntitySet*>>& new_sets);

}  // namespace corec
