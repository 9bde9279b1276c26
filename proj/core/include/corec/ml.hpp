#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace corec::ml {

enum class Algorithm { DecisionTree, RandomForest, NaiveBayes, AdaBoostStumps, AdaBoostForest };

const char* algorithm_name(Algorithm a);
std::optional<Algorithm> algorithm_from_name(const std::string& name);

inline constexpr int kRelevant = 1;
inline constexpr int kNotRelevant = 0;
inline constexpr std::uint64_t kDefaultSeed = 0x5eed0c0ffee;

struct Dataset {
    std::size_t feature_count = 10;
    std::vector<std::vector<double>> features;
    std::vector<int> labels;  // kRelevant / kNotRelevant, parallel to features

    void add(std::vector<double> row, int label) {
        features.push_back(std::move(row));
        labels.push_back(label);
    }
    std::size_t size() const { return features.size(); }
};

struct ModelSpec {
    Algorithm algorithm = Algorithm::RandomForest;
    std::size_t tree_count = 100;
    std::size_t boost_rounds = 10;
    std::uint64_t seed = kDefaultSeed;
};

struct Prediction {
    int label = kNotRelevant;
    double score = 0;  // Relevant-class probability estimate
};

// CART node; feature == -1 marks a leaf carrying the Relevant fraction.
struct TreeNode {
    int feature = -1;
    double threshold = 0;
    double relevant_fraction = 0;
    int left = -1;   // index, samples with value <= threshold
    int right = -1;  // samples with value > threshold
};

struct Tree {
    std::vector<TreeNode> nodes;
    double score(const std::vector<double>& fv) const;
};

struct GaussianNB {
    double prior[2] = {0, 0};
    std::vector<double> mean[2];
    std::vector<double> variance[2];  // floored at 1e-9
};

struct TrainedModel {
    ModelSpec spec;
    std::size_t feature_count = 0;
    bool constant = false;        // single-class degenerate model
    double constant_score = 0;    // 1 when the constant class is Relevant
    // Ensemble members with weights. DecisionTree: one member, one tree.
    // RandomForest: one member holding all trees. Boosting: one member per
    // round (stumps or forests) with its alpha.
    std::vector<std::pair<std::vector<Tree>, double>> members;
    std::optional<GaussianNB> nb;
};

struct TrainingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ModelFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Deterministic training; equal (spec, data) give equal models.
TrainedModel train(const ModelSpec& spec, const Dataset& data);

/// Throws std::invalid_argument when fv's size differs from the model's
/// feature count. label = Relevant iff score >= 0.5.
Prediction predict(const TrainedModel& model, const std::vector<double>& fv);

/// Versioned text container with a magic header; lossless round trip.
std::string save(const TrainedModel& model);
TrainedModel load(const std::string& bytes);

}  // namespace corec::ml
