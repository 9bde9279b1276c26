#pragma once

#include <string>
#include <vector>

#include "corec/binding.hpp"
#include "corec/distill.hpp"

namespace corec {

struct CdgNode {
    int id = 0;
    EntityEdit edit;
};

struct CdgEdge {
    int from = 0;  // referencer
    int to = 0;    // referencee ("the entity being depended upon")
    char label = 'f';  // 'f', 'v', or 'c' (containment)
    auto operator<=>(const CdgEdge&) const = default;
};

struct ChangeDependencyGraph {
    std::vector<CdgNode> nodes;  // ids are 0..n-1, assigned in signature order
    std::vector<CdgEdge> edges;
};

/// Builds the change dependency graphs of one commit: edited entities as
/// nodes, access (f/v) and containment edges, split into weakly connected
/// components of at least two nodes.
std::vector<ChangeDependencyGraph> build_cdgs(const std::vector<EntityEdit>& edits,
                                              const ProjectIndex& index);

/// Stable text form: `node <id> <edit_kind> <signature>` and
/// `edge <from> <to> <label>` lines.
std::string export_cdg(const ChangeDependencyGraph& g);

}  // namespace corec
