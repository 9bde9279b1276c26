#include "corec/features.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "corec/util.hpp"

namespace corec {

std::size_t HistoryIndex::co_change_count(const std::string& a, const std::string& b,
                                          std::size_t before_ordinal) const {
    auto ia = edits_by_signature.find(a);
    auto ib = edits_by_signature.find(b);
    if (ia == edits_by_signature.end() || ib == edits_by_signature.end()) return 0;
    std::size_t n = 0;
    for (std::size_t o : ia->second) {
        if (o >= before_ordinal) break;
        if (ib->second.count(o)) ++n;
    }
    return n;
}

std::string HistoryIndex::dump() const {
    std::ostringstream os;
    for (const auto& [sig, ordinals] : edits_by_signature)
        for (std::size_t o : ordinals) os << sig << '\t' << o << '\n';
    return os.str();
}

namespace {

std::string last_segment(const std::string& name) {
    auto dot = name.rfind('.');
    return dot == std::string::npos ? name : name.substr(dot + 1);
}

std::string name_in_module(const Entity& e) {
    if (e.signature.size() > e.module_path.size() + 1 &&
        e.signature.compare(0, e.module_path.size(), e.module_path) == 0)
        return e.signature.substr(e.module_path.size() + 1);
    return e.signature;
}

// Whether `f` references the peer named `name` (within E_m's module), by any
// reference kind: calls, reads/writes, and value uses all count as access.
// Same-module peers match by full local name; cross-module access matches
// when the reference's last segment equals the peer's simple name.
bool accesses(const Entity& f, const std::string& name) {
    for (const Reference& r : f.referenced_names)
        if (r.name == name || last_segment(r.name) == last_segment(name)) return true;
    return false;
}

std::size_t common_peer_count(const Entity& f1, const Entity& f2,
                              const std::set<std::pair<std::string, std::string>>& peers) {
    std::size_t n = 0;
    for (const auto& [sig, name] : peers)
        if (accesses(f1, name) && accesses(f2, name)) ++n;
    return n;
}

std::set<std::string> known_param_types(const Entity& f) {
    std::set<std::string> out;
    for (const Param& p : f.parameters)
        if (p.type_token != kUnknownType) out.insert(p.type_token);
    return out;
}

}  // namespace

PeerContext make_peer_context(const Entity& e_m, const EntitySet& em_file_set) {
    PeerContext ctx;
    for (const Entity& e : em_file_set.entities) {
        if (e.signature == e_m.signature) continue;
        if (e.kind == EntityKind::Variable)
            ctx.peer_variables.emplace(e.signature, name_in_module(e));
        else if (e.kind == EntityKind::Function)
            ctx.peer_functions.emplace(e.signature, name_in_module(e));
    }
    return ctx;
}

double token_similarity(const Entity& f1, const Entity& f2) {
    return lcs_similarity(f1.token_sequence, f2.token_sequence);
}

double statement_similarity(const Entity& f1, const Entity& f2) {
    const std::size_t n1 = f1.statements.size(), n2 = f2.statements.size();
    if (n1 + n2 == 0) return 100.0;
    std::map<std::string, std::size_t> counts;
    for (const auto& s : f1.statements) ++counts[s];
    std::size_t n3 = 0;
    for (const auto& s : f2.statements) {
        auto it = counts.find(s);
        if (it != counts.end() && it->second > 0) {
            --it->second;
            ++n3;
        }
    }
    return static_cast<double>(n3) * 2.0 / static_cast<double>(n1 + n2) * 100.0;
}

FeatureVector extract_features(const Entity& f1, const Entity& f2, const EntityEdit& e_m,
                               const PeerContext& ctx, const HistoryIndex& history,
                               std::size_t current_ordinal) {
    FeatureVector fv;
    const Entity& em = e_m.body();

    if (e_m.kind != EditKind::AV) {
        const auto& f2_types = infer_type_tokens(f2);
        for (const Param& p : em.parameters)
            if (p.type_token != kUnknownType && f2_types.count(p.type_token))
                fv.f1_em_param_types += 1;
    }
    fv.f2_em_return_type_used = em.return_type_token != kUnknownType &&
                                infer_type_tokens(f2).count(em.return_type_token) > 0;

    fv.f3_common_peer_vars = static_cast<double>(common_peer_count(f1, f2, ctx.peer_variables));
    fv.f4_common_peer_funcs = static_cast<double>(common_peer_count(f1, f2, ctx.peer_functions));

    auto t1 = known_param_types(f1), t2 = known_param_types(f2);
    for (const auto& t : t1)
        if (t2.count(t)) fv.f5_common_param_types += 1;

    fv.f6_same_return_type = f1.return_type_token != kUnknownType &&
                             f1.return_type_token == f2.return_type_token;
    fv.f7_same_definition_style = f1.style == f2.style;
    fv.f8_token_similarity = token_similarity(f1, f2);
    fv.f9_statement_similarity = statement_similarity(f1, f2);
    fv.f10_coevolution_count = static_cast<double>(
        history.co_change_count(f1.signature, f2.signature, current_ordinal));
    return fv;
}

std::string feature_csv_header() { return "f1,f2,f3,f4,f5,f6,f7,f8,f9,f10,label"; }

std::string feature_csv_row(const FeatureVector& fv, const std::string& label) {
    std::ostringstream os;
    for (double v : fv.values()) os << v << ',';
    os << label;
    return os.str();
}

}  // namespace corec
