#pragma once

#include <array>
#include <set>
#include <string>

#include "corec/distill.hpp"
#include "corec/history.hpp"

namespace corec {

// The 10 features of an ordered function pair (f1, f2) relative to the
// depended entity E_m. f1 is the known-changed function, f2 the candidate.
struct FeatureVector {
    double f1_em_param_types = 0;   // E_m params whose type appears in f2
    bool f2_em_return_type_used = false;
    double f3_common_peer_vars = 0;
    double f4_common_peer_funcs = 0;
    double f5_common_param_types = 0;
    bool f6_same_return_type = false;
    bool f7_same_definition_style = false;
    double f8_token_similarity = 0;
    double f9_statement_similarity = 0;
    double f10_coevolution_count = 0;

    std::array<double, 10> values() const {
        return {f1_em_param_types,
                f2_em_return_type_used ? 1.0 : 0.0,
                f3_common_peer_vars,
                f4_common_peer_funcs,
                f5_common_param_types,
                f6_same_return_type ? 1.0 : 0.0,
                f7_same_definition_style ? 1.0 : 0.0,
                f8_token_similarity,
                f9_statement_similarity,
                f10_coevolution_count};
    }
};

// Variables and functions defined in the same file as E_m, E_m excluded.
// Each peer is kept as (signature, name within its module) so accesses can be
// matched against referenced names.
struct PeerContext {
    std::set<std::pair<std::string, std::string>> peer_variables;
    std::set<std::pair<std::string, std::string>> peer_functions;
};

PeerContext make_peer_context(const Entity& e_m, const EntitySet& em_file_set);

/// 100 · 2·LCS / (n1+n2) over the token sequences; 100 for two empty bodies.
double token_similarity(const Entity& f1, const Entity& f2);

/// Eq.-(1)-style: n3·2/(n1+n2)·100 with n3 the multiset intersection of
/// normalized statements.
double statement_similarity(const Entity& f1, const Entity& f2);

FeatureVector extract_features(const Entity& f1, const Entity& f2, const EntityEdit& e_m,
                               const PeerContext& ctx, const HistoryIndex& history,
                               std::size_t current_ordinal);

/// CSV header for feature-table exports: f1,...,f10,label
std::string feature_csv_header();
std::string feature_csv_row(const FeatureVector& fv, const std::string& label);

}  // namespace corec
