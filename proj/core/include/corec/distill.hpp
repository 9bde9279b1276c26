#pragma once

#include <optional>
#include <vector>

#include "corec/entity.hpp"

namespace corec {

// Entity-level edit kinds: Added/Deleted/Changed x Class/Function/Variable/Block.
enum class EditKind { AC, DC, AF, DF, CF, AV, DV, CV, AB, DB, CB };

const char* edit_kind_name(EditKind k);
std::optional<EditKind> edit_kind_from_name(const std::string& name);

inline bool is_added(EditKind k) {
    return k == EditKind::AC || k == EditKind::AF || k == EditKind::AV || k == EditKind::AB;
}
inline bool is_deleted(EditKind k) {
    return k == EditKind::DC || k == EditKind::DF || k == EditKind::DV || k == EditKind::DB;
}
inline bool is_changed(EditKind k) { return !is_added(k) && !is_deleted(k); }

struct EntityEdit {
    EditKind kind = EditKind::CF;
    std::optional<Entity> old_entity;
    std::optional<Entity> new_entity;

    const Entity& body() const { return new_entity ? *new_entity : *old_entity; }
    const std::string& signature() const { return body().signature; }
};

/// Token-LCS similarity of two statement blocks, in percent.
double block_similarity(const Entity& b1, const Entity& b2);

/// Diffs the two versions of a file into entity-level edits. Named entities
/// match by signature; blocks match greedily by highest similarity above 50%.
/// Matched entities with identical token sequences produce no edit.
std::vector<EntityEdit> diff_entity_sets(const EntitySet& old_set, const EntitySet& new_set);

}  // namespace corec
