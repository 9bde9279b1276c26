#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "corec/cdg.hpp"
#include "corec/features.hpp"
#include "corec/ml.hpp"
#include "corec/pattern.hpp"
#include "corec/repo.hpp"
#include "corec/rules.hpp"

namespace corec {

/// One commit's full analysis: CDGs over its entity edits and the detected
/// pattern instances, keeping the new-version entity sets for feature context.
struct CommitAnalysis {
    CommitRef commit;
    std::vector<EntityEdit> edits;
    std::vector<ChangeDependencyGraph> cdgs;
    std::vector<PatternMatch> matches;
    std::map<std::string, EntitySet> new_sets;
};

CommitAnalysis analyze_commit(CommitEdits commit_edits);

/// One leave-one-function-out trial built from a pattern match: the tool sees
/// E_m and one changed function and must find the other changed functions
/// hidden among the unchanged ones.
struct PredictionTask {
    std::size_t ordinal = 0;
    std::string pattern_id;
    EntityEdit e_m;
    Entity given_cf;
    std::set<std::string> ground_truth;                  // size n-1, never empty
    std::vector<std::pair<std::string, Entity>> candidates;  // pool, signature-sorted
    PeerContext peers;
};

/// n tasks from a match with |cf_set| = n >= 2; fewer changed functions give
/// no tasks.
std::vector<PredictionTask> build_tasks(const PatternMatch& match, std::size_t ordinal,
                                        const std::map<std::string, EntitySet>& new_sets);

/// Seeded shuffle then balanced partition: the first size%k parts get the
/// extra element. k falls back to |commits| when there are fewer commits.
std::vector<std::vector<std::size_t>> kfold_split(std::vector<std::size_t> commits, std::size_t k,
                                                  std::uint64_t seed);

/// Ordered-pair training rows per §5.2 semantics: every ordered pair of
/// co-changed functions is Relevant; changed x unchanged pairs, both orders,
/// are NotRelevant. Feature history is cut at each match's own commit ordinal.
void append_training_rows(ml::Dataset& data, const PatternMatch& match, std::size_t ordinal,
                          const std::map<std::string, EntitySet>& new_sets,
                          const HistoryIndex& history);

/// Candidates where either ordered pairing with the given function is
/// classified Relevant.
std::set<std::string> recommend_corec(const ml::TrainedModel& model, const PredictionTask& task,
                                      const HistoryIndex& history);

struct TaskOutcome {
    std::size_t ground_truth_size = 0;
    std::size_t recommended = 0;
    std::size_t correct = 0;
    bool covered = false;  // at least one recommendation made
};

struct Metrics {
    double coverage = 0;  // percent over all tasks
    std::optional<double> precision, recall, f1;  // percent, absent when nothing covered
    std::size_t task_count = 0;
};

Metrics score(const std::vector<TaskOutcome>& outcomes);

/// Task-count-weighted mean of per-project metrics; absent fields count as 0.
Metrics weighted_average(const std::vector<std::pair<Metrics, std::size_t>>& per_project);

struct EvalConfig {
    std::vector<std::string> patterns = {"P1", "P2", "P3"};
    std::vector<std::string> tools = {"CoRec", "CoRec_u", "ROSE", "TAR"};
    ml::ModelSpec model;
    std::size_t folds = 5;
    std::uint64_t seed = ml::kDefaultSeed;
    std::size_t min_support = 1;
    double min_confidence = 0.1;
};

struct EvalRow {
    std::string pattern_id;
    std::string tool;
    Metrics metrics;
};

/// Cross-validated comparison over one project's analyzed commits. Fold
/// assignment is by commit; rule mining and feature-10 history for a test
/// task only see commits with smaller ordinals.
std::vector<EvalRow> evaluate_project(const std::vector<CommitAnalysis>& commits,
                                      const HistoryIndex& history, const EvalConfig& config);

/// Aligned text table per pattern (integer percentages, half-up; "-" when a
/// metric is absent).
std::string format_report(const std::vector<EvalRow>& rows);

/// pattern,tool,tasks,coverage,precision,recall,f1 lines.
std::string report_csv(const std::vector<EvalRow>& rows);

}  // namespace corec
