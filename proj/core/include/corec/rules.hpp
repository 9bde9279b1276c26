#pragma once

#include <set>
#include <string>
#include <vector>

#include "corec/history.hpp"

namespace corec {

struct AssociationRule {
    std::string antecedent;
    std::string consequent;
    std::size_t support = 0;   // commits containing both entities
    double confidence = 0;     // support / commits containing the antecedent

    auto operator<=>(const AssociationRule&) const = default;
};

/// Single-antecedent co-change rules over all commits with ordinal <
/// before_ordinal, filtered by both thresholds; ordered by
/// (antecedent, consequent).
std::vector<AssociationRule> mine_rose(const HistoryIndex& history, std::size_t min_support,
                                       double min_confidence,
                                       std::size_t before_ordinal = static_cast<std::size_t>(-1));

/// One-hop transitive closure: adds E1=>E3 for each E1=>E2, E2=>E3 chain with
/// confidence = product of the parents' and support = min of the parents'.
/// Duplicated pairs keep the maximum confidence; thresholds are re-applied.
std::vector<AssociationRule> derive_tar(const std::vector<AssociationRule>& rules,
                                        std::size_t min_support, double min_confidence);

/// Consequents of rules whose antecedent is already known changed, restricted
/// to the candidate pool, excluding the known-changed set itself.
std::set<std::string> recommend_rules(const std::vector<AssociationRule>& rules,
                                      const std::set<std::string>& known_changed,
                                      const std::set<std::string>& candidates);

/// One rule per line: antecedent, consequent, support, confidence (6 decimals),
/// tab separated, in mine_rose order.
std::string rule_dump(const std::vector<AssociationRule>& rules);

}  // namespace corec
