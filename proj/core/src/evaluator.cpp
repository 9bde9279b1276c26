#include "corec/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

namespace corec {

namespace {

std::vector<std::pair<std::string, const EntitySet*>> set_refs(
    const std::map<std::string, EntitySet>& sets) {
    std::vector<std::pair<std::string, const EntitySet*>> refs;
    for (const auto& [module, set] : sets) refs.emplace_back(module, &set);
    return refs;
}

const EntitySet& module_set(const std::map<std::string, EntitySet>& sets,
                            const std::string& module) {
    static const EntitySet empty;
    auto it = sets.find(module);
    return it == sets.end() ? empty : it->second;
}

std::vector<double> row_of(const FeatureVector& fv) {
    auto arr = fv.values();
    return {arr.begin(), arr.end()};
}

ml::TrainedModel train_or_empty(const ml::ModelSpec& spec, const ml::Dataset& data) {
    if (data.size() > 0) return ml::train(spec, data);
    // nothing to learn from: recommend nothing
    ml::TrainedModel model;
    model.spec = spec;
    model.feature_count = data.feature_count;
    model.constant = true;
    model.constant_score = 0;
    return model;
}

long round_half_up(double v) { return std::llround(v); }

std::string cell(const std::optional<double>& v) {
    return v ? std::to_string(round_half_up(*v)) : "-";
}

}  // namespace

CommitAnalysis analyze_commit(CommitEdits commit_edits) {
    CommitAnalysis out;
    out.commit = commit_edits.commit;
    out.edits = std::move(commit_edits.edits);
    out.new_sets = std::move(commit_edits.new_sets);

    auto refs = set_refs(out.new_sets);
    auto old_refs = set_refs(commit_edits.old_sets);  // fallback for deleted modules
    refs.insert(refs.end(), old_refs.begin(), old_refs.end());
    ProjectIndex index = build_index(refs);

    out.cdgs = build_cdgs(out.edits, index);
    out.matches = detect_patterns(out.edits, out.cdgs, set_refs(out.new_sets));
    return out;
}

std::vector<PredictionTask> build_tasks(const PatternMatch& match, std::size_t ordinal,
                                        const std::map<std::string, EntitySet>& new_sets) {
    std::vector<PredictionTask> tasks;
    if (match.cf_set.size() < 2) return tasks;

    PeerContext peers =
        make_peer_context(match.depended.body(), module_set(new_sets, match.depended.body().module_path));

    for (std::size_t i = 0; i < match.cf_set.size(); ++i) {
        PredictionTask task;
        task.ordinal = ordinal;
        task.pattern_id = match.pattern_id;
        task.e_m = match.depended;
        task.given_cf = match.cf_set[i].body();
        task.peers = peers;

        std::map<std::string, Entity> pool;
        for (std::size_t j = 0; j < match.cf_set.size(); ++j) {
            if (j == i) continue;
            task.ground_truth.insert(match.cf_set[j].signature());
            pool.emplace(match.cf_set[j].signature(), match.cf_set[j].body());
        }
        for (const Entity& u : match.uf_set)
            if (u.signature != task.given_cf.signature) pool.emplace(u.signature, u);
        task.candidates.assign(pool.begin(), pool.end());
        tasks.push_back(std::move(task));
    }
    return tasks;
}

std::vector<std::vector<std::size_t>> kfold_split(std::vector<std::size_t> commits, std::size_t k,
                                                  std::uint64_t seed) {
    if (commits.empty()) return {};
    std::sort(commits.begin(), commits.end());
    if (k > commits.size()) k = commits.size();
    std::mt19937_64 rng(seed);
    std::shuffle(commits.begin(), commits.end(), rng);

    std::vector<std::vector<std::size_t>> folds(k);
    std::size_t base = commits.size() / k, extra = commits.size() % k, at = 0;
    for (std::size_t f = 0; f < k; ++f) {
        std::size_t take = base + (f < extra ? 1 : 0);
        folds[f].assign(commits.begin() + at, commits.begin() + at + take);
        at += take;
    }
    return folds;
}

void append_training_rows(ml::Dataset& data, const PatternMatch& match, std::size_t ordinal,
                          const std::map<std::string, EntitySet>& new_sets,
                          const HistoryIndex& history) {
    PeerContext peers =
        make_peer_context(match.depended.body(), module_set(new_sets, match.depended.body().module_path));

    for (std::size_t i = 0; i < match.cf_set.size(); ++i)
        for (std::size_t j = 0; j < match.cf_set.size(); ++j) {
            if (i == j) continue;
            FeatureVector fv = extract_features(match.cf_set[i].body(), match.cf_set[j].body(),
                                                match.depended, peers, history, ordinal);
            data.add(row_of(fv), ml::kRelevant);
        }
    for (const EntityEdit& changed : match.cf_set)
        for (const Entity& unchanged : match.uf_set) {
            data.add(row_of(extract_features(changed.body(), unchanged, match.depended, peers,
                                             history, ordinal)),
                     ml::kNotRelevant);
            data.add(row_of(extract_features(unchanged, changed.body(), match.depended, peers,
                                             history, ordinal)),
                     ml::kNotRelevant);
        }
}

std::set<std::string> recommend_corec(const ml::TrainedModel& model, const PredictionTask& task,
                                      const HistoryIndex& history) {
    std::set<std::string> out;
    for (const auto& [sig, entity] : task.candidates) {
        FeatureVector forward =
            extract_features(task.given_cf, entity, task.e_m, task.peers, history, task.ordinal);
        if (ml::predict(model, row_of(forward)).label == ml::kRelevant) {
            out.insert(sig);
            continue;
        }
        FeatureVector backward =
            extract_features(entity, task.given_cf, task.e_m, task.peers, history, task.ordinal);
        if (ml::predict(model, row_of(backward)).label == ml::kRelevant) out.insert(sig);
    }
    return out;
}

Metrics score(const std::vector<TaskOutcome>& outcomes) {
    Metrics m;
    m.task_count = outcomes.size();
    if (outcomes.empty()) return m;

    std::size_t covered = 0, recommended = 0, correct = 0, expected = 0;
    for (const TaskOutcome& o : outcomes) {
        if (!o.covered) continue;
        ++covered;
        recommended += o.recommended;
        correct += o.correct;
        expected += o.ground_truth_size;
    }
    m.coverage = 100.0 * static_cast<double>(covered) / static_cast<double>(outcomes.size());
    if (covered == 0) return m;

    double p = recommended ? 100.0 * static_cast<double>(correct) / recommended : 0.0;
    double r = expected ? 100.0 * static_cast<double>(correct) / expected : 0.0;
    m.precision = p;
    m.recall = r;
    m.f1 = p + r > 0 ? 2 * p * r / (p + r) : 0.0;
    return m;
}

Metrics weighted_average(const std::vector<std::pair<Metrics, std::size_t>>& per_project) {
    Metrics wa;
    double n_total = 0, cov = 0, pre = 0, rec = 0, f1 = 0;
    for (const auto& [m, n] : per_project) {
        double w = static_cast<double>(n);
        n_total += w;
        wa.task_count += n;
        cov += m.coverage * w;
        pre += m.precision.value_or(0) * w;
        rec += m.recall.value_or(0) * w;
        f1 += m.f1.value_or(0) * w;
    }
    if (n_total == 0) return wa;
    wa.coverage = cov / n_total;
    wa.precision = pre / n_total;
    wa.recall = rec / n_total;
    wa.f1 = f1 / n_total;
    return wa;
}

std::vector<EvalRow> evaluate_project(const std::vector<CommitAnalysis>& commits,
                                      const HistoryIndex& history, const EvalConfig& config) {
    std::vector<EvalRow> rows;
    bool wants_tar = std::count(config.tools.begin(), config.tools.end(), "TAR") > 0;

    for (const std::string& pattern : config.patterns) {
        std::map<std::size_t, std::vector<PredictionTask>> tasks_by_commit;
        for (const CommitAnalysis& ca : commits)
            for (const PatternMatch& m : ca.matches) {
                if (m.pattern_id != pattern) continue;
                auto tasks = build_tasks(m, ca.commit.ordinal, ca.new_sets);
                auto& bucket = tasks_by_commit[ca.commit.ordinal];
                bucket.insert(bucket.end(), tasks.begin(), tasks.end());
            }
        for (auto it = tasks_by_commit.begin(); it != tasks_by_commit.end();)
            it = it->second.empty() ? tasks_by_commit.erase(it) : std::next(it);

        std::map<std::string, std::vector<TaskOutcome>> outcomes;
        for (const std::string& tool : config.tools) outcomes[tool];

        std::vector<std::size_t> task_commits;
        for (const auto& [ordinal, tasks] : tasks_by_commit) task_commits.push_back(ordinal);

        for (const auto& fold : kfold_split(task_commits, config.folds, config.seed)) {
            std::set<std::size_t> test_set(fold.begin(), fold.end());

            ml::Dataset pattern_rows, unified_rows;
            for (const CommitAnalysis& ca : commits) {
                if (test_set.count(ca.commit.ordinal)) continue;
                for (const PatternMatch& m : ca.matches) {
                    if (m.pattern_id == pattern)
                        append_training_rows(pattern_rows, m, ca.commit.ordinal, ca.new_sets,
                                             history);
                    if (m.pattern_id == "P1" || m.pattern_id == "P2" || m.pattern_id == "P3")
                        append_training_rows(unified_rows, m, ca.commit.ordinal, ca.new_sets,
                                             history);
                }
            }
            ml::TrainedModel corec_model, unified_model;
            if (outcomes.count("CoRec")) corec_model = train_or_empty(config.model, pattern_rows);
            if (outcomes.count("CoRec_u"))
                unified_model = train_or_empty(config.model, unified_rows);

            for (std::size_t ordinal : fold) {
                for (const PredictionTask& task : tasks_by_commit.at(ordinal)) {
                    std::set<std::string> candidates, known = {task.e_m.signature(),
                                                               task.given_cf.signature};
                    for (const auto& [sig, entity] : task.candidates) candidates.insert(sig);

                    std::vector<AssociationRule> rose;
                    if (outcomes.count("ROSE") || wants_tar)
                        rose = mine_rose(history, config.min_support, config.min_confidence,
                                         task.ordinal);

                    for (const std::string& tool : config.tools) {
                        std::set<std::string> rec;
                        if (tool == "CoRec")
                            rec = recommend_corec(corec_model, task, history);
                        else if (tool == "CoRec_u")
                            rec = recommend_corec(unified_model, task, history);
                        else if (tool == "ROSE")
                            rec = recommend_rules(rose, known, candidates);
                        else if (tool == "TAR")
                            rec = recommend_rules(
                                derive_tar(rose, config.min_support, config.min_confidence), known,
                                candidates);

                        TaskOutcome o;
                        o.ground_truth_size = task.ground_truth.size();
                        o.recommended = rec.size();
                        o.covered = !rec.empty();
                        for (const auto& sig : rec)
                            if (task.ground_truth.count(sig)) ++o.correct;
                        outcomes[tool].push_back(o);
                    }
                }
            }
        }
        for (const std::string& tool : config.tools)
            rows.push_back({pattern, tool, score(outcomes[tool])});
    }
    return rows;
}

std::string format_report(const std::vector<EvalRow>& rows) {
    std::ostringstream os;
    std::string current;
    for (const EvalRow& row : rows) {
        if (row.pattern_id != current) {
            current = row.pattern_id;
            os << "Pattern " << current << '\n';
            os << "  " << std::left << std::setw(10) << "Tool" << std::right << std::setw(6)
               << "Tasks" << std::setw(6) << "Cov" << std::setw(6) << "Pre" << std::setw(6)
               << "Rec" << std::setw(6) << "F1" << '\n';
        }
        os << "  " << std::left << std::setw(10) << row.tool << std::right << std::setw(6)
           << row.metrics.task_count << std::setw(6) << round_half_up(row.metrics.coverage)
           << std::setw(6) << cell(row.metrics.precision) << std::setw(6)
           << cell(row.metrics.recall) << std::setw(6) << cell(row.metrics.f1) << '\n';
    }
    return os.str();
}

std::string report_csv(const std::vector<EvalRow>& rows) {
    std::ostringstream os;
    os << "pattern,tool,tasks,coverage,precision,recall,f1\n";
    for (const EvalRow& row : rows) {
        os << row.pattern_id << ',' << row.tool << ',' << row.metrics.task_count << ','
           << round_half_up(row.metrics.coverage) << ',';
        os << (row.metrics.precision ? std::to_string(round_half_up(*row.metrics.precision)) : "")
           << ',';
        os << (row.metrics.recall ? std::to_string(round_half_up(*row.metrics.recall)) : "") << ',';
        os << (row.metrics.f1 ? std::to_string(round_half_up(*row.metrics.f1)) : "") << '\n';
    }
    return os.str();
}

}  // namespace corec
