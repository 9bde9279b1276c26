#include "corec/rules.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace corec {

std::vector<AssociationRule> mine_rose(const HistoryIndex& history, std::size_t min_support,
                                       double min_confidence, std::size_t before_ordinal) {
    std::map<std::string, std::size_t> antecedent_commits;
    std::map<std::pair<std::string, std::string>, std::size_t> pair_commits;
    for (const auto& [ordinal, sigs] : history.entities_by_commit) {
        if (ordinal >= before_ordinal) continue;
        for (const auto& a : sigs) {
            ++antecedent_commits[a];
            for (const auto& b : sigs)
                if (a != b) ++pair_commits[{a, b}];
        }
    }
    std::vector<AssociationRule> rules;
    for (const auto& [pair, support] : pair_commits) {
        if (support < min_support) continue;
        double confidence =
            static_cast<double>(support) / static_cast<double>(antecedent_commits[pair.first]);
        if (confidence < min_confidence) continue;
        rules.push_back({pair.first, pair.second, support, confidence});
    }
    // map iteration is already (antecedent, consequent) ordered
    return rules;
}

std::vector<AssociationRule> derive_tar(const std::vector<AssociationRule>& rules,
                                        std::size_t min_support, double min_confidence) {
    std::map<std::pair<std::string, std::string>, AssociationRule> best;
    for (const AssociationRule& r : rules) best[{r.antecedent, r.consequent}] = r;

    std::map<std::string, std::vector<const AssociationRule*>> by_antecedent;
    for (const AssociationRule& r : rules) by_antecedent[r.antecedent].push_back(&r);

    for (const AssociationRule& first : rules) {
        auto it = by_antecedent.find(first.consequent);
        if (it == by_antecedent.end()) continue;
        for (const AssociationRule* second : it->second) {
            if (second->consequent == first.antecedent) continue;
            AssociationRule derived{first.antecedent, second->consequent,
                                    std::min(first.support, second->support),
                                    first.confidence * second->confidence};
            auto [slot, inserted] = best.try_emplace({derived.antecedent, derived.consequent},
                                                     derived);
            if (!inserted && derived.confidence > slot->second.confidence) slot->second = derived;
        }
    }
    std::vector<AssociationRule> out;
    for (const auto& [pair, rule] : best)
        if (rule.support >= min_support && rule.confidence >= min_confidence) out.push_back(rule);
    return out;
}

std::set<std::string> recommend_rules(const std::vector<AssociationRule>& rules,
                                      const std::set<std::string>& known_changed,
                                      const std::set<std::string>& candidates) {
    std::set<std::string> out;
    for (const AssociationRule& r : rules)
        if (known_changed.count(r.antecedent) && candidates.count(r.consequent) &&
            !known_changed.count(r.consequent))
            out.insert(r.consequent);
    return out;
}

std::string rule_dump(const std::vector<AssociationRule>& rules) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(6);
    for (const AssociationRule& r : rules)
        os << r.antecedent << '\t' << r.consequent << '\t' << r.support << '\t' << r.confidence
           << '\n';
    return os.str();
}

}  // namespace corec
