#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "corec/eval.hpp"

using namespace corec;

namespace {

Entity make_fn(const std::string& module, const std::string& name,
               const std::vector<std::string>& tokens,
               DefinitionStyle style = DefinitionStyle::FunctionDeclaration) {
    Entity e;
    e.kind = EntityKind::Function;
    e.module_path = module;
    e.signature = module + "." + name;
    e.style = style;
    e.token_sequence = tokens;
    std::string stmt;
    for (const auto& t : tokens) stmt += t + " ";
    e.statements = {stmt};
    return e;
}

EntityEdit make_edit(EditKind kind, Entity body) {
    EntityEdit edit;
    edit.kind = kind;
    edit.new_entity = std::move(body);
    return edit;
}

// One commit where twins f_a/f_b co-change around a changed hub, with decoys
// that share nothing with them.
CommitAnalysis planted_commit(std::size_t ordinal, int salt) {
    CommitAnalysis ca;
    ca.commit.ordinal = ordinal;
    std::string s = std::to_string(salt);

    Entity hub = make_fn("m", "hub" + s, {"function", "hub", "(", ")", "{", "core", "(", s, ")"});
    std::vector<std::string> shared = {"function", "x", "(", ")", "{", "hub" + s, "(",
                                       ")", ";", "emit", "(", "payload" + s, ")", "}"};
    Entity fa = make_fn("m", "fa" + s, shared);
    Entity fb = make_fn("m", "fb" + s, shared);
    Entity decoy1 = make_fn("m", "decoy1" + s, {"var", "q", "=", s},
                            DefinitionStyle::ExportsFunction);
    Entity decoy2 = make_fn("m", "decoy2" + s, {"const", "z", "=", "[", "]"},
                            DefinitionStyle::PrototypeFunction);

    PatternMatch match;
    match.pattern_id = "P1";
    match.depended = make_edit(EditKind::CF, hub);
    match.cf_set = {make_edit(EditKind::CF, fa), make_edit(EditKind::CF, fb)};
    match.uf_set = {decoy1, decoy2};
    ca.matches.push_back(std::move(match));
    return ca;
}

}  // namespace

TEST_CASE("build_tasks creates one leave-out task per changed function") {
    PatternMatch match;
    match.pattern_id = "P1";
    match.depended = make_edit(EditKind::CF, make_fn("m", "hub", {"h"}));
    match.cf_set = {make_edit(EditKind::CF, make_fn("m", "a", {"a"})),
                    make_edit(EditKind::CF, make_fn("m", "b", {"b"})),
                    make_edit(EditKind::CF, make_fn("m", "c", {"c"}))};
    match.uf_set = {make_fn("m", "u", {"u"})};

    auto tasks = build_tasks(match, 7, {});
    REQUIRE(tasks.size() == 3);
    auto given_a = std::find_if(tasks.begin(), tasks.end(),
                                [](const PredictionTask& t) { return t.given_cf.signature == "m.a"; });
    REQUIRE(given_a != tasks.end());
    CHECK(given_a->ground_truth == std::set<std::string>{"m.b", "m.c"});
    CHECK(given_a->ordinal == 7);
    CHECK(given_a->candidates.size() == 3);  // b, c, u
    for (const auto& t : tasks) {
        CHECK(!t.ground_truth.count(t.given_cf.signature));
        for (const auto& gt : t.ground_truth) {
            bool in_pool = std::any_of(t.candidates.begin(), t.candidates.end(),
                                       [&](const auto& c) { return c.first == gt; });
            CHECK(in_pool);
        }
    }
}

TEST_CASE("a single changed function yields no task") {
    PatternMatch match;
    match.pattern_id = "P2";
    match.depended = make_edit(EditKind::AF, make_fn("m", "hub", {"h"}));
    match.cf_set = {make_edit(EditKind::CF, make_fn("m", "a", {"a"}))};
    CHECK(build_tasks(match, 0, {}).empty());
}

TEST_CASE("kfold partitions 23 commits into sizes 5,5,5,4,4") {
    std::vector<std::size_t> commits(23);
    for (std::size_t i = 0; i < 23; ++i) commits[i] = i;
    auto folds = kfold_split(commits, 5, 99);
    REQUIRE(folds.size() == 5);
    std::vector<std::size_t> sizes;
    for (const auto& f : folds) sizes.push_back(f.size());
    CHECK(sizes == std::vector<std::size_t>{5, 5, 5, 4, 4});

    std::set<std::size_t> all;
    for (const auto& f : folds) all.insert(f.begin(), f.end());
    CHECK(all.size() == 23);  // a true partition
}

TEST_CASE("kfold is seed-deterministic and shrinks when commits are scarce") {
    std::vector<std::size_t> commits = {3, 1, 4, 1, 5, 9, 2, 6};
    commits.erase(std::unique(commits.begin(), commits.end()), commits.end());
    auto a = kfold_split(commits, 5, 1234);
    auto b = kfold_split(commits, 5, 1234);
    CHECK(a == b);
    auto c = kfold_split(commits, 5, 1235);
    CHECK(a != c);

    auto tiny = kfold_split({10, 20, 30}, 5, 1);
    CHECK(tiny.size() == 3);
    for (const auto& f : tiny) CHECK(f.size() == 1);

    CHECK(kfold_split({}, 5, 1).empty());
}

TEST_CASE("score reproduces the worked coverage and precision examples") {
    std::vector<TaskOutcome> outcomes;
    for (int i = 0; i < 10; ++i) outcomes.push_back({1, 1, i < 7 ? 1u : 0u, true});
    for (int i = 0; i < 90; ++i) outcomes.push_back({1, 0, 0, false});
    Metrics m = score(outcomes);
    CHECK(m.coverage == doctest::Approx(10.0));  // 10 of 100 covered
    CHECK(*m.precision == doctest::Approx(70.0));  // 7 of 10 recommendations correct
    CHECK(m.task_count == 100);
}

TEST_CASE("f1 is the harmonic mean and a perfect recommender scores 100 everywhere") {
    std::vector<TaskOutcome> half = {{2, 2, 1, true}};  // P = 1/2, R = 1/2
    Metrics m = score(half);
    CHECK(*m.precision == doctest::Approx(50.0));
    CHECK(*m.recall == doctest::Approx(50.0));
    CHECK(*m.f1 == doctest::Approx(50.0));

    std::vector<TaskOutcome> perfect(8, {3, 3, 3, true});
    Metrics p = score(perfect);
    CHECK(p.coverage == doctest::Approx(100.0));
    CHECK(*p.precision == doctest::Approx(100.0));
    CHECK(*p.recall == doctest::Approx(100.0));
    CHECK(*p.f1 == doctest::Approx(100.0));
}

TEST_CASE("score is permutation invariant and absent below any coverage") {
    std::vector<TaskOutcome> outcomes = {{2, 3, 1, true}, {1, 0, 0, false}, {4, 2, 2, true}};
    Metrics a = score(outcomes);
    std::ranges::rotate(outcomes, outcomes.begin() + 1);
    Metrics b = score(outcomes);
    CHECK(a.coverage == b.coverage);
    CHECK(*a.precision == *b.precision);
    CHECK(*a.recall == *b.recall);

    Metrics none = score({{1, 0, 0, false}, {2, 0, 0, false}});
    CHECK(none.coverage == 0.0);
    CHECK(!none.precision.has_value());
    CHECK(!none.recall.has_value());
    CHECK(!none.f1.has_value());
}

TEST_CASE("weighted average follows Eq. 6") {
    Metrics a;
    a.coverage = 80;
    a.precision = a.recall = a.f1 = 80;
    Metrics b;
    b.coverage = 60;
    b.precision = b.recall = b.f1 = 60;
    Metrics wa = weighted_average({{a, 30}, {b, 10}});
    CHECK(wa.coverage == doctest::Approx(75.0));
    CHECK(*wa.f1 == doctest::Approx(75.0));
    CHECK(wa.task_count == 40);

    Metrics solo = weighted_average({{a, 30}});
    CHECK(solo.coverage == doctest::Approx(80.0));
    CHECK(*solo.precision == doctest::Approx(80.0));
}

TEST_CASE("constant models force empty or full recommendations") {
    PatternMatch match;
    match.pattern_id = "P1";
    match.depended = make_edit(EditKind::CF, make_fn("m", "hub", {"h"}));
    match.cf_set = {make_edit(EditKind::CF, make_fn("m", "a", {"a"})),
                    make_edit(EditKind::CF, make_fn("m", "b", {"b"}))};
    match.uf_set = {make_fn("m", "u1", {"u"}), make_fn("m", "u2", {"w"})};
    auto tasks = build_tasks(match, 5, {});
    REQUIRE(!tasks.empty());
    HistoryIndex history;

    ml::TrainedModel never;
    never.feature_count = 10;
    never.constant = true;
    never.constant_score = 0;
    CHECK(recommend_corec(never, tasks[0], history).empty());

    ml::TrainedModel always = never;
    always.constant_score = 1;
    auto rec = recommend_corec(always, tasks[0], history);
    CHECK(rec.size() == tasks[0].candidates.size());
}

TEST_CASE("training rows follow the ordered-pair construction") {
    PatternMatch match;
    match.pattern_id = "P1";
    match.depended = make_edit(EditKind::CF, make_fn("m", "hub", {"h"}));
    match.cf_set = {make_edit(EditKind::CF, make_fn("m", "a", {"a"})),
                    make_edit(EditKind::CF, make_fn("m", "b", {"b"})),
                    make_edit(EditKind::CF, make_fn("m", "c", {"c"}))};
    match.uf_set = {make_fn("m", "u1", {"u"}), make_fn("m", "u2", {"w"})};

    ml::Dataset data;
    HistoryIndex history;
    append_training_rows(data, match, 4, {}, history);
    // positives: 3*2 ordered pairs; negatives: 3 changed x 2 unchanged x 2 orders
    std::size_t positives = std::count(data.labels.begin(), data.labels.end(), ml::kRelevant);
    CHECK(positives == 6);
    CHECK(data.size() - positives == 12);
}

TEST_CASE("cross-validated evaluation separates planted twins from decoys") {
    std::vector<CommitAnalysis> commits;
    HistoryIndex history;
    for (std::size_t o = 0; o < 10; ++o) {
        commits.push_back(planted_commit(o, static_cast<int>(o)));
        for (const auto& m : commits.back().matches) {
            history.record(o, m.depended.signature());
            for (const auto& e : m.cf_set) history.record(o, e.signature());
        }
    }
    EvalConfig config;
    config.model.tree_count = 25;
    auto rows = evaluate_project(commits, history, config);

    auto find_row = [&](const std::string& pattern, const std::string& tool) {
        auto it = std::find_if(rows.begin(), rows.end(), [&](const EvalRow& r) {
            return r.pattern_id == pattern && r.tool == tool;
        });
        REQUIRE(it != rows.end());
        return *it;
    };
    EvalRow corec = find_row("P1", "CoRec");
    CHECK(corec.metrics.task_count == 20);  // 10 commits x 2 tasks
    CHECK(corec.metrics.coverage > 99.0);
    CHECK(*corec.metrics.f1 > 90.0);  // twins share tokens/style, decoys do not

    // every tool reports a row per requested pattern, in order
    CHECK(rows.size() == config.patterns.size() * config.tools.size());
    EvalRow p2 = find_row("P2", "CoRec");
    CHECK(p2.metrics.task_count == 0);

    auto again = evaluate_project(commits, history, config);
    CHECK(report_csv(again) == report_csv(rows));
}

TEST_CASE("report formats include every row and the csv header") {
    EvalRow a{"P1", "CoRec", {}};
    a.metrics.coverage = 83.4;
    a.metrics.precision = 72.5;
    a.metrics.recall = 72.9;
    a.metrics.f1 = 73.2;
    a.metrics.task_count = 12;
    EvalRow b{"P1", "ROSE", {}};
    b.metrics.task_count = 12;  // nothing covered: absent metrics

    std::string text = format_report({a, b});
    CHECK(text.find("Pattern P1") != std::string::npos);
    CHECK(text.find("CoRec") != std::string::npos);
    CHECK(text.find("83") != std::string::npos);
    CHECK(text.find("73") != std::string::npos);  // half-up rounding of 72.5 -> 73
    CHECK(text.find("-") != std::string::npos);

    std::string csv = report_csv({a, b});
    CHECK(csv.starts_with("pattern,tool,tasks,coverage,precision,recall,f1\n"));
    CHECK(csv.find("P1,CoRec,12,83,73,73,73\n") != std::string::npos);
    CHECK(csv.find("P1,ROSE,12,0,,,\n") != std::string::npos);
}
