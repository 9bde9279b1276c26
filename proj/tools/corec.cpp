#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "corec/eval.hpp"

namespace fs = std::filesystem;
using namespace corec;

namespace {

struct CommonOpts {
    std::string repo;
    std::vector<std::string> keywords = default_keywords();
    std::vector<std::string> patterns = {"P1", "P2", "P3"};
    std::string algorithm = "RandomForest";
    std::size_t trees = 100;
    std::size_t rounds = 10;
    std::size_t folds = 5;
    std::uint64_t seed = ml::kDefaultSeed;
    std::size_t support = 1;
    double confidence = 0.1;
    bool unified = false;
    std::vector<std::string> tools = {"CoRec", "CoRec_u", "ROSE", "TAR"};
    std::size_t jobs = 1;
    std::string out = "corec-out";
};

void add_common_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--repo", o.repo, "Path to the git repository")->required();
    cmd->add_option("--keywords", o.keywords, "Commit-selection keywords");
    cmd->add_option("--patterns", o.patterns, "Patterns to use (P1 P2 P3)");
    cmd->add_option("--algorithm", o.algorithm,
                    "DecisionTree|RandomForest|NaiveBayes|AdaBoostStumps|AdaBoostForest");
    cmd->add_option("--trees", o.trees, "Trees per forest");
    cmd->add_option("--rounds", o.rounds, "Boosting rounds");
    cmd->add_option("--folds", o.folds, "Cross-validation folds");
    cmd->add_option("--seed", o.seed, "Random seed");
    cmd->add_option("--support", o.support, "Minimum rule support");
    cmd->add_option("--confidence", o.confidence, "Minimum rule confidence");
    cmd->add_flag("--unified", o.unified, "Pool the patterns into one classifier");
    cmd->add_option("--tools", o.tools, "Tools to evaluate (CoRec CoRec_u ROSE TAR)");
    cmd->add_option("--jobs", o.jobs, "Worker cap (outputs are identical at any value)");
    cmd->add_option("--out", o.out, "Output directory");
}

ml::ModelSpec model_spec(const CommonOpts& o) {
    auto algo = ml::algorithm_from_name(o.algorithm);
    if (!algo) throw CLI::ValidationError("--algorithm", "unknown algorithm: " + o.algorithm);
    ml::ModelSpec spec;
    spec.algorithm = *algo;
    spec.tree_count = o.trees;
    spec.boost_rounds = o.rounds;
    spec.seed = o.seed;
    return spec;
}

struct MinedProject {
    std::vector<CommitRef> commits;
    std::vector<CommitAnalysis> analyses;
    HistoryIndex history;
};

MinedProject mine_project(const CommonOpts& o) {
    MinedProject p;
    p.commits = scan_commits(o.repo, o.keywords);
    std::cerr << "scanned " << p.commits.size() << " keyword commits in " << o.repo << '\n';
    for (const CommitRef& c : p.commits) {
        CommitEdits distilled = distill_commit(o.repo, c);
        for (const auto& path : distilled.parse_failures)
            std::cerr << "parse failure skipped: " << c.id.substr(0, 8) << ' ' << path << '\n';
        CommitAnalysis ca = analyze_commit(std::move(distilled));
        for (const EntityEdit& e : ca.edits) p.history.record(c.ordinal, e.signature());
        p.analyses.push_back(std::move(ca));
    }
    return p;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream(path, std::ios::binary) << content;
}

ml::Dataset collect_rows(const MinedProject& p, const std::string& pattern) {
    ml::Dataset data;
    for (const CommitAnalysis& ca : p.analyses)
        for (const PatternMatch& m : ca.matches)
            if (pattern == "unified" ? (m.pattern_id == "P1" || m.pattern_id == "P2" ||
                                        m.pattern_id == "P3")
                                     : m.pattern_id == pattern)
                append_training_rows(data, m, ca.commit.ordinal, ca.new_sets, p.history);
    return data;
}

int cmd_mine(const CommonOpts& o) {
    MinedProject p = mine_project(o);
    fs::create_directories(o.out);

    std::ostringstream commits, edits, cdgs, matches;
    std::map<std::string, std::vector<ChangeDependencyGraph>> cdgs_by_commit;
    for (const CommitAnalysis& ca : p.analyses) {
        commits << ca.commit.ordinal << '\t' << ca.commit.id << '\t' << ca.commit.timestamp
                << '\n';
        for (const EntityEdit& e : ca.edits)
            edits << ca.commit.ordinal << '\t' << edit_kind_name(e.kind) << '\t' << e.signature()
                  << '\n';
        for (std::size_t i = 0; i < ca.cdgs.size(); ++i) {
            cdgs << "commit " << ca.commit.id << " cdg " << i << '\n'
                 << export_cdg(ca.cdgs[i]);
        }
        for (const PatternMatch& m : ca.matches)
            matches << ca.commit.ordinal << '\t' << m.pattern_id << '\t'
                    << m.depended.signature() << '\t' << m.cf_set.size() << '\t'
                    << m.uf_set.size() << '\n';
        cdgs_by_commit[ca.commit.id] = ca.cdgs;
    }
    write_file(fs::path(o.out) / "commits.tsv", commits.str());
    write_file(fs::path(o.out) / "edits.tsv", edits.str());
    write_file(fs::path(o.out) / "cdgs.txt", cdgs.str());
    write_file(fs::path(o.out) / "matches.tsv", matches.str());
    write_file(fs::path(o.out) / "history.tsv", p.history.dump());
    write_file(fs::path(o.out) / "rcps.txt", pattern_report(mine_rcps(cdgs_by_commit)));
    std::cerr << "artifacts written to " << o.out << '\n';
    return 0;
}

int cmd_train(const CommonOpts& o) {
    MinedProject p = mine_project(o);
    fs::create_directories(o.out);
    ml::ModelSpec spec = model_spec(o);

    std::vector<std::string> targets =
        o.unified ? std::vector<std::string>{"unified"} : o.patterns;
    int trained = 0;
    for (const std::string& target : targets) {
        ml::Dataset data = collect_rows(p, target);
        if (data.size() == 0) {
            std::cerr << "warning: no training rows for " << target << ", model skipped\n";
            continue;
        }
        ml::TrainedModel model = ml::train(spec, data);
        write_file(fs::path(o.out) / ("model_" + target + ".txt"), ml::save(model));
        std::cerr << "trained " << target << " on " << data.size() << " rows\n";
        ++trained;
    }
    if (trained == 0) {
        std::cerr << "error: no pattern had training data; per-pattern row counts:";
        for (const std::string& pat : o.patterns)
            std::cerr << ' ' << pat << "=" << collect_rows(p, pat).size();
        std::cerr << '\n';
        return 1;
    }
    return 0;
}

int cmd_recommend(const CommonOpts& o, const std::string& commit_id) {
    auto chain = all_commits(o.repo);
    auto target = std::find_if(chain.begin(), chain.end(), [&](const CommitRef& c) {
        return c.id.starts_with(commit_id);
    });
    if (target == chain.end()) {
        std::cerr << "error: commit " << commit_id << " not found on the first-parent chain\n";
        return 1;
    }

    std::map<std::string, ml::TrainedModel> models;
    for (const std::string& pattern : o.patterns) {
        fs::path file = fs::path(o.out) / ("model_" + (o.unified ? std::string("unified")
                                                                 : pattern) + ".txt");
        std::ifstream in(file, std::ios::binary);
        if (!in) continue;
        std::stringstream buffer;
        buffer << in.rdbuf();
        models[pattern] = ml::load(buffer.str());
    }
    if (models.empty()) {
        std::cerr << "error: no model files under " << o.out << "; run `corec train` first\n";
        return 1;
    }

    HistoryIndex history;
    for (const CommitRef& c : scan_commits(o.repo, o.keywords)) {
        if (c.ordinal >= target->ordinal) break;
        for (const EntityEdit& e : distill_commit(o.repo, c).edits)
            history.record(c.ordinal, e.signature());
    }

    CommitAnalysis ca = analyze_commit(distill_commit(o.repo, *target));
    bool any = false;
    for (const PatternMatch& m : ca.matches) {
        if (!models.count(m.pattern_id)) continue;
        const ml::TrainedModel& model = models.at(m.pattern_id);
        PeerContext peers;
        {
            static const EntitySet empty;
            auto it = ca.new_sets.find(m.depended.body().module_path);
            peers = make_peer_context(m.depended.body(),
                                      it == ca.new_sets.end() ? empty : it->second);
        }
        std::vector<std::pair<double, std::string>> ranked;
        for (const Entity& u : m.uf_set) {
            double best = 0;
            bool relevant = false;
            for (const EntityEdit& cf : m.cf_set) {
                for (const auto& [f1, f2] : {std::pair<const Entity*, const Entity*>{&cf.body(), &u},
                                             {&u, &cf.body()}}) {
                    FeatureVector fv = extract_features(*f1, *f2, m.depended, peers, history,
                                                        target->ordinal);
                    auto arr = fv.values();
                    ml::Prediction pred = ml::predict(model, {arr.begin(), arr.end()});
                    best = std::max(best, pred.score);
                    relevant = relevant || pred.label == ml::kRelevant;
                }
            }
            if (relevant) ranked.emplace_back(best, u.signature);
        }
        std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });

        any = true;
        std::cout << m.pattern_id << " around " << m.depended.signature() << '\n';
        std::cout << "  changed:";
        for (const EntityEdit& cf : m.cf_set) std::cout << ' ' << cf.signature();
        std::cout << '\n';
        if (ranked.empty()) std::cout << "  no recommendation\n";
        for (const auto& [score, sig] : ranked)
            std::cout << "  recommend " << sig << " score " << score << '\n';
    }
    if (!any) std::cout << "no recommendation basis in commit " << target->id << '\n';
    return 0;
}

int cmd_evaluate(const CommonOpts& o) {
    MinedProject p = mine_project(o);
    EvalConfig config;
    config.patterns = o.patterns;
    config.tools = o.tools;
    config.model = model_spec(o);
    config.folds = o.folds;
    config.seed = o.seed;
    config.min_support = o.support;
    config.min_confidence = o.confidence;

    auto rows = evaluate_project(p.analyses, p.history, config);
    std::cout << format_report(rows);
    fs::create_directories(o.out);
    write_file(fs::path(o.out) / "report.csv", report_csv(rows));
    std::cerr << "report written to " << (fs::path(o.out) / "report.csv").string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Co-change mining and recommendation for JavaScript repositories"};
    app.require_subcommand(1);

    CommonOpts mine_opts, train_opts, rec_opts, eval_opts;
    std::string commit_id;

    CLI::App* mine = app.add_subcommand("mine", "Scan a repository and dump mined artifacts");
    add_common_flags(mine, mine_opts);
    CLI::App* train = app.add_subcommand("train", "Train per-pattern (or unified) classifiers");
    add_common_flags(train, train_opts);
    CLI::App* rec = app.add_subcommand("recommend", "Recommend co-changes for one commit");
    add_common_flags(rec, rec_opts);
    rec->add_option("commit", commit_id, "Commit id (prefix allowed)")->required();
    CLI::App* eval = app.add_subcommand("evaluate", "Cross-validated tool comparison");
    add_common_flags(eval, eval_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (mine->parsed()) return cmd_mine(mine_opts);
        if (train->parsed()) return cmd_train(train_opts);
        if (rec->parsed()) return cmd_recommend(rec_opts, commit_id);
        if (eval->parsed()) return cmd_evaluate(eval_opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
