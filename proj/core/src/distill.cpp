#include "corec/distill.hpp"

#include <algorithm>
#include <tuple>

#include "corec/util.hpp"

namespace corec {

namespace {

const char* const kEditNames[] = {"AC", "DC", "AF", "DF", "CF", "AV",
                                  "DV", "CV", "AB", "DB", "CB"};

}  // namespace

const char* edit_kind_name(EditKind k) { return kEditNames[static_cast<int>(k)]; }

std::optional<EditKind> edit_kind_from_name(const std::string& name) {
    for (int i = 0; i < 11; ++i)
        if (name == kEditNames[i]) return static_cast<EditKind>(i);
    return std::nullopt;
}

double block_similarity(const Entity& b1, const Entity& b2) {
    return lcs_similarity(b1.token_sequence, b2.token_sequence);
}

std::vector<EntityEdit> diff_entity_sets(const EntitySet& old_set, const EntitySet& new_set) {
    std::vector<EntityEdit> edits;

    // Named entities: signature matching. There is no "changed class" edit
    // kind; a modified class body shows up as CF/AV/... on its members.
    for (const Entity& oe : old_set.entities) {
        if (oe.kind == EntityKind::Block) continue;
        const Entity* ne = new_set.find(oe.signature);
        if (!ne) {
            EntityEdit e;
            e.kind = oe.kind == EntityKind::Class      ? EditKind::DC
                     : oe.kind == EntityKind::Function ? EditKind::DF
                                                       : EditKind::DV;
            e.old_entity = oe;
            edits.push_back(std::move(e));
        } else if (oe.kind != EntityKind::Class && oe.token_sequence != ne->token_sequence) {
            EntityEdit e;
            e.kind = oe.kind == EntityKind::Function ? EditKind::CF : EditKind::CV;
            e.old_entity = oe;
            e.new_entity = *ne;
            edits.push_back(std::move(e));
        }
    }
    for (const Entity& ne : new_set.entities) {
        if (ne.kind == EntityKind::Block) continue;
        if (old_set.find(ne.signature)) continue;
        EntityEdit e;
        e.kind = ne.kind == EntityKind::Class      ? EditKind::AC
                 : ne.kind == EntityKind::Function ? EditKind::AF
                                                   : EditKind::AV;
        e.new_entity = ne;
        edits.push_back(std::move(e));
    }

    // Blocks: greedy assignment by descending similarity, strictly above 50%.
    std::vector<const Entity*> old_blocks, new_blocks;
    for (const Entity& e : old_set.entities)
        if (e.kind == EntityKind::Block) old_blocks.push_back(&e);
    for (const Entity& e : new_set.entities)
        if (e.kind == EntityKind::Block) new_blocks.push_back(&e);

    struct Cand {
        double sim;
        std::size_t oi, ni;
    };
    std::vector<Cand> cands;
    for (std::size_t i = 0; i < old_blocks.size(); ++i)
        for (std::size_t j = 0; j < new_blocks.size(); ++j) {
            double s = block_similarity(*old_blocks[i], *new_blocks[j]);
            if (s > 50.0) cands.push_back({s, i, j});
        }
    std::sort(cands.begin(), cands.end(), [&](const Cand& a, const Cand& b) {
        if (a.sim != b.sim) return a.sim > b.sim;
        return std::pair(old_blocks[a.oi]->start, new_blocks[a.ni]->start) <
               std::pair(old_blocks[b.oi]->start, new_blocks[b.ni]->start);
    });
    std::vector<bool> old_used(old_blocks.size()), new_used(new_blocks.size());
    for (const Cand& c : cands) {
        if (old_used[c.oi] || new_used[c.ni]) continue;
        old_used[c.oi] = new_used[c.ni] = true;
        if (old_blocks[c.oi]->token_sequence != new_blocks[c.ni]->token_sequence) {
            EntityEdit e;
            e.kind = EditKind::CB;
            e.old_entity = *old_blocks[c.oi];
            e.new_entity = *new_blocks[c.ni];
            edits.push_back(std::move(e));
        }
    }
    for (std::size_t i = 0; i < old_blocks.size(); ++i)
        if (!old_used[i]) {
            EntityEdit e;
            e.kind = EditKind::DB;
            e.old_entity = *old_blocks[i];
            edits.push_back(std::move(e));
        }
    for (std::size_t j = 0; j < new_blocks.size(); ++j)
        if (!new_used[j]) {
            EntityEdit e;
            e.kind = EditKind::AB;
            e.new_entity = *new_blocks[j];
            edits.push_back(std::move(e));
        }

    std::sort(edits.begin(), edits.end(), [](const EntityEdit& a, const EntityEdit& b) {
        return std::pair(a.body().start, a.signature()) < std::pair(b.body().start, b.signature());
    });
    return edits;
}

}  // namespace corec
