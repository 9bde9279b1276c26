#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>

namespace corec {

// Which entity signatures were edited in which commits (by ordinal).
// Feeds co-evolution counting (feature 10) and the rule-mining baselines.
struct HistoryIndex {
    std::map<std::string, std::set<std::size_t>> edits_by_signature;
    std::map<std::size_t, std::set<std::string>> entities_by_commit;

    void record(std::size_t ordinal, const std::string& signature) {
        edits_by_signature[signature].insert(ordinal);
        entities_by_commit[ordinal].insert(signature);
    }

    /// Commits strictly before `before_ordinal` that edited both signatures.
    std::size_t co_change_count(const std::string& a, const std::string& b,
                                std::size_t before_ordinal) const;

    /// Tab-separated (signature, ordinal) dump, sorted by signature then ordinal.
    std::string dump() const;
};

}  // namespace corec
