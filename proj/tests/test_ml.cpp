#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "corec/ml.hpp"

using namespace corec::ml;

namespace {

std::vector<double> padded(std::initializer_list<double> head) {
    std::vector<double> row(head);
    row.resize(10, 0.0);
    return row;
}

// Two well-separated clusters in the first two features, mild noise elsewhere.
Dataset separable_dataset(std::size_t rows, std::uint64_t seed) {
    Dataset data;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> jitter(0.0, 0.3);
    std::uniform_real_distribution<double> noise(0.0, 1.0);
    for (std::size_t i = 0; i < rows; ++i) {
        int label = i % 2 == 0 ? kRelevant : kNotRelevant;
        double base = label == kRelevant ? 4.0 : 0.0;
        std::vector<double> row(10);
        row[0] = base + jitter(rng);
        row[1] = base + jitter(rng);
        for (std::size_t f = 2; f < 10; ++f) row[f] = noise(rng);
        data.add(std::move(row), label);
    }
    return data;
}

double cv_accuracy(Algorithm algo, const Dataset& data, std::size_t folds) {
    std::size_t correct = 0;
    for (std::size_t fold = 0; fold < folds; ++fold) {
        Dataset train_split, test_split;
        for (std::size_t i = 0; i < data.size(); ++i)
            (i % folds == fold ? test_split : train_split).add(data.features[i], data.labels[i]);
        ModelSpec spec;
        spec.algorithm = algo;
        spec.tree_count = 25;
        spec.boost_rounds = 5;
        TrainedModel model = train(spec, train_split);
        for (std::size_t i = 0; i < test_split.size(); ++i)
            if (predict(model, test_split.features[i]).label == test_split.labels[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(data.size());
}

}  // namespace

TEST_CASE("single-class training data yields a constant model") {
    Dataset data;
    data.add(padded({1, 2}), kRelevant);
    data.add(padded({3, 4}), kRelevant);
    ModelSpec spec;
    for (Algorithm a : {Algorithm::DecisionTree, Algorithm::RandomForest, Algorithm::NaiveBayes,
                        Algorithm::AdaBoostStumps, Algorithm::AdaBoostForest}) {
        spec.algorithm = a;
        TrainedModel m = train(spec, data);
        CHECK(m.constant);
        Prediction p = predict(m, padded({99, -99}));
        CHECK(p.label == kRelevant);
        CHECK(p.score == 1.0);
    }
    Dataset negatives;
    negatives.add(padded({1}), kNotRelevant);
    negatives.add(padded({2}), kNotRelevant);
    TrainedModel m = train(spec, negatives);
    CHECK(m.constant);
    Prediction p = predict(m, padded({0}));
    CHECK(p.label == kNotRelevant);
    CHECK(p.score == 0.0);
}

TEST_CASE("decision tree separates a margin dataset perfectly in-sample") {
    Dataset data = separable_dataset(100, 7);
    ModelSpec spec;
    spec.algorithm = Algorithm::DecisionTree;
    TrainedModel m = train(spec, data);
    for (std::size_t i = 0; i < data.size(); ++i)
        CHECK(predict(m, data.features[i]).label == data.labels[i]);
}

TEST_CASE("random forest reaches 95% cross-validated accuracy on separable data") {
    Dataset data = separable_dataset(200, 11);
    CHECK(cv_accuracy(Algorithm::RandomForest, data, 5) >= 0.95);
}

TEST_CASE("boosted forest reaches 95% cross-validated accuracy on separable data") {
    Dataset data = separable_dataset(200, 13);
    CHECK(cv_accuracy(Algorithm::AdaBoostForest, data, 5) >= 0.95);
}

TEST_CASE("boosted stumps handle an axis-aligned split") {
    Dataset data = separable_dataset(120, 17);
    CHECK(cv_accuracy(Algorithm::AdaBoostStumps, data, 4) >= 0.95);
}

TEST_CASE("naive bayes posterior matches the closed form on a two-point class pair") {
    // One feature matters; fit on points whose per-class mean/variance are easy
    // to compute by hand, then check the posterior at a probe point.
    Dataset data;
    data.feature_count = 1;
    data.add({0.0}, kNotRelevant);
    data.add({2.0}, kNotRelevant);
    data.add({6.0}, kRelevant);
    data.add({8.0}, kRelevant);
    ModelSpec spec;
    spec.algorithm = Algorithm::NaiveBayes;
    TrainedModel m = train(spec, data);

    // class 0: mean 1, var 1 (+floor); class 1: mean 7, var 1 (+floor); priors 1/2
    const double var = 1.0 + 1e-9;
    auto likelihood = [&](double x, double mean) {
        return std::exp(-(x - mean) * (x - mean) / (2 * var)) / std::sqrt(2 * M_PI * var);
    };
    double x = 3.0;
    double p0 = 0.5 * likelihood(x, 1.0), p1 = 0.5 * likelihood(x, 7.0);
    double expected = p1 / (p0 + p1);
    Prediction got = predict(m, {x});
    CHECK(got.score == doctest::Approx(expected).epsilon(1e-9));
    CHECK(got.label == kNotRelevant);

    // complementary probe: scores at x and its mirror sum to 1 by symmetry
    double mirrored = predict(m, {8.0 - x + 0.0}).score;
    CHECK(got.score + mirrored == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("forest score is the fraction of trees voting Relevant") {
    // Build a forest by hand: 100 single-leaf trees, 63 voting Relevant.
    TrainedModel m;
    m.spec.algorithm = Algorithm::RandomForest;
    m.feature_count = 10;
    std::vector<Tree> trees;
    for (int t = 0; t < 100; ++t) {
        Tree tree;
        TreeNode leaf;
        leaf.relevant_fraction = t < 63 ? 1.0 : 0.0;
        tree.nodes.push_back(leaf);
        trees.push_back(tree);
    }
    m.members.emplace_back(trees, 1.0);
    Prediction p = predict(m, padded({}));
    CHECK(p.score == doctest::Approx(0.63));
    CHECK(p.label == kRelevant);
}

TEST_CASE("training is deterministic for a fixed seed and differs across seeds") {
    Dataset data = separable_dataset(80, 23);
    ModelSpec spec;
    spec.algorithm = Algorithm::RandomForest;
    spec.tree_count = 20;
    spec.seed = 42;
    std::string a = save(train(spec, data));
    std::string b = save(train(spec, data));
    CHECK(a == b);
    spec.seed = 43;
    std::string c = save(train(spec, data));
    CHECK(a != c);
}

TEST_CASE("save/load round trip preserves predictions exactly") {
    Dataset data = separable_dataset(80, 29);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-1.0, 5.0);
    for (Algorithm a : {Algorithm::DecisionTree, Algorithm::RandomForest, Algorithm::NaiveBayes,
                        Algorithm::AdaBoostStumps, Algorithm::AdaBoostForest}) {
        ModelSpec spec;
        spec.algorithm = a;
        spec.tree_count = 10;
        spec.boost_rounds = 3;
        TrainedModel original = train(spec, data);
        TrainedModel restored = load(save(original));
        CHECK(save(restored) == save(original));
        for (int probe = 0; probe < 50; ++probe) {
            std::vector<double> fv(10);
            for (auto& v : fv) v = u(rng);
            Prediction p = predict(original, fv), q = predict(restored, fv);
            CHECK(p.score == q.score);
            CHECK(p.label == q.label);
        }
    }
}

TEST_CASE("malformed model payloads are rejected") {
    Dataset data = separable_dataset(40, 37);
    ModelSpec spec;
    spec.algorithm = Algorithm::RandomForest;
    spec.tree_count = 5;
    std::string bytes = save(train(spec, data));

    CHECK_THROWS_AS(load("not a model"), ModelFormatError);
    CHECK_THROWS_AS(load(""), ModelFormatError);
    CHECK_THROWS_AS(load(bytes.substr(0, bytes.size() / 2)), ModelFormatError);
    CHECK_THROWS_AS(load("CORECML1\nMysteryAlgo 1 1 0 10\n"), ModelFormatError);
}

TEST_CASE("prediction rejects feature vectors of the wrong width") {
    Dataset data = separable_dataset(40, 41);
    ModelSpec spec;
    spec.algorithm = Algorithm::DecisionTree;
    TrainedModel m = train(spec, data);
    CHECK_THROWS_AS(predict(m, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("training rejects empty and ragged datasets") {
    Dataset empty;
    CHECK_THROWS_AS(train(ModelSpec{}, empty), TrainingError);
    Dataset ragged;
    ragged.add(padded({1}), kRelevant);
    ragged.add({1.0, 2.0}, kNotRelevant);  // width 2 != 10
    CHECK_THROWS_AS(train(ModelSpec{}, ragged), TrainingError);
}

TEST_CASE("algorithm names round-trip") {
    for (Algorithm a : {Algorithm::DecisionTree, Algorithm::RandomForest, Algorithm::NaiveBayes,
                        Algorithm::AdaBoostStumps, Algorithm::AdaBoostForest})
        CHECK(algorithm_from_name(algorithm_name(a)) == a);
    CHECK(!algorithm_from_name("GradientBoost").has_value());
}
