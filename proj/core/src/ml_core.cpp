#include "corec/ml.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "corec/util.hpp"

namespace corec::ml {

namespace {

constexpr double kVarianceFloor = 1e-9;

const char* const kAlgoNames[] = {"DecisionTree", "RandomForest", "NaiveBayes", "AdaBoostStumps",
                                  "AdaBoostForest"};

struct TreeTrainer {
    const Dataset& data;
    const std::vector<double>* weights = nullptr;  // uniform when null
    int max_depth = -1;
    std::size_t mtry = 0;  // 0 = all features
    std::mt19937_64* rng = nullptr;

    std::vector<TreeNode> nodes;

    double weight(int i) const { return weights ? (*weights)[i] : 1.0; }

    Tree run(const std::vector<int>& idx) {
        nodes.clear();
        build(idx, 0);
        Tree t;
        t.nodes = std::move(nodes);
        return t;
    }

    int make_leaf(const std::vector<int>& idx) {
        double total = 0, relevant = 0;
        for (int i : idx) {
            total += weight(i);
            if (data.labels[i] == kRelevant) relevant += weight(i);
        }
        TreeNode n;
        n.relevant_fraction = total > 0 ? relevant / total : 0;
        nodes.push_back(n);
        return static_cast<int>(nodes.size()) - 1;
    }

    std::vector<int> candidate_features() const {
        std::vector<int> all(data.feature_count);
        for (std::size_t f = 0; f < data.feature_count; ++f) all[f] = static_cast<int>(f);
        if (mtry == 0 || mtry >= data.feature_count) return all;
        // draw mtry distinct features, then evaluate in ascending order so
        // the lowest-index tie-break stays well defined
        std::vector<int> picked;
        for (std::size_t k = 0; k < mtry; ++k) {
            std::uniform_int_distribution<std::size_t> d(0, all.size() - 1 - k);
            std::size_t j = d(*rng);
            picked.push_back(all[j]);
            std::swap(all[j], all[all.size() - 1 - k]);
        }
        std::sort(picked.begin(), picked.end());
        return picked;
    }

    int build(const std::vector<int>& idx, int depth) {
        bool pure = true;
        for (std::size_t k = 1; k < idx.size(); ++k)
            if (data.labels[idx[k]] != data.labels[idx[0]]) {
                pure = false;
                break;
            }
        if (idx.size() < 2 || pure || depth == max_depth) return make_leaf(idx);

        int best_feature = -1;
        double best_threshold = 0, best_gini = std::numeric_limits<double>::infinity();
        for (int f : candidate_features()) {
            // sort samples by this feature's value
            std::vector<std::pair<double, int>> vals;
            vals.reserve(idx.size());
            for (int i : idx) vals.emplace_back(data.features[i][f], i);
            std::sort(vals.begin(), vals.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            double total_w = 0, total_r = 0;
            for (const auto& [v, i] : vals) {
                total_w += weight(i);
                if (data.labels[i] == kRelevant) total_r += weight(i);
            }
            double left_w = 0, left_r = 0;
            for (std::size_t k = 0; k + 1 < vals.size(); ++k) {
                left_w += weight(vals[k].second);
                if (data.labels[vals[k].second] == kRelevant) left_r += weight(vals[k].second);
                if (vals[k].first == vals[k + 1].first) continue;  // not a distinct boundary
                double threshold = vals[k].first + (vals[k + 1].first - vals[k].first) / 2;
                double right_w = total_w - left_w, right_r = total_r - left_r;
                auto gini = [](double w, double r) {
                    if (w <= 0) return 0.0;
                    double p = r / w;
                    return 2 * p * (1 - p);
                };
                double g =
                    (left_w * gini(left_w, left_r) + right_w * gini(right_w, right_r)) / total_w;
                if (g < best_gini) {
                    best_gini = g;
                    best_feature = f;
                    best_threshold = threshold;
                }
            }
        }
        if (best_feature < 0) return make_leaf(idx);  // candidates were constant

        std::vector<int> left, right;
        for (int i : idx)
            (data.features[i][best_feature] <= best_threshold ? left : right).push_back(i);
        TreeNode n;
        n.feature = best_feature;
        n.threshold = best_threshold;
        int self = static_cast<int>(nodes.size());
        nodes.push_back(n);
        int l = build(left, depth + 1);
        int r = build(right, depth + 1);
        nodes[self].left = l;
        nodes[self].right = r;
        return self;
    }
};

std::vector<int> all_rows(const Dataset& data) {
    std::vector<int> idx(data.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    return idx;
}

std::vector<Tree> train_forest(const Dataset& data, std::size_t tree_count, std::uint64_t seed) {
    std::vector<Tree> trees;
    std::size_t mtry = static_cast<std::size_t>(std::sqrt(static_cast<double>(data.feature_count)));
    for (std::size_t t = 0; t < tree_count; ++t) {
        std::mt19937_64 rng(mix_seed(seed, t));
        std::uniform_int_distribution<std::size_t> pick(0, data.size() - 1);
        std::vector<int> idx(data.size());
        for (auto& i : idx) i = static_cast<int>(pick(rng));
        TreeTrainer trainer{data};
        trainer.mtry = mtry;
        trainer.rng = &rng;
        trees.push_back(trainer.run(idx));
    }
    return trees;
}

double forest_score(const std::vector<Tree>& trees, const std::vector<double>& fv) {
    std::size_t votes = 0;
    for (const Tree& t : trees)
        if (t.score(fv) >= 0.5) ++votes;
    return static_cast<double>(votes) / static_cast<double>(trees.size());
}

GaussianNB train_nb(const Dataset& data) {
    GaussianNB nb;
    std::size_t counts[2] = {0, 0};
    for (int c : {0, 1}) {
        nb.mean[c].assign(data.feature_count, 0);
        nb.variance[c].assign(data.feature_count, kVarianceFloor);
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
        int c = data.labels[i];
        ++counts[c];
        for (std::size_t f = 0; f < data.feature_count; ++f) nb.mean[c][f] += data.features[i][f];
    }
    for (int c : {0, 1}) {
        nb.prior[c] = static_cast<double>(counts[c]) / static_cast<double>(data.size());
        if (counts[c] == 0) continue;
        for (auto& m : nb.mean[c]) m /= static_cast<double>(counts[c]);
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
        int c = data.labels[i];
        for (std::size_t f = 0; f < data.feature_count; ++f) {
            double d = data.features[i][f] - nb.mean[c][f];
            nb.variance[c][f] += d * d / static_cast<double>(counts[c]);
        }
    }
    return nb;
}

double nb_score(const GaussianNB& nb, const std::vector<double>& fv) {
    double logp[2];
    for (int c : {0, 1}) {
        if (nb.prior[c] <= 0) {
            logp[c] = -std::numeric_limits<double>::infinity();
            continue;
        }
        double lp = std::log(nb.prior[c]);
        for (std::size_t f = 0; f < fv.size(); ++f) {
            double var = nb.variance[c][f];
            double d = fv[f] - nb.mean[c][f];
            lp += -0.5 * std::log(2 * M_PI * var) - d * d / (2 * var);
        }
        logp[c] = lp;
    }
    double m = std::max(logp[0], logp[1]);
    double e0 = std::exp(logp[0] - m), e1 = std::exp(logp[1] - m);
    return e1 / (e0 + e1);
}

int ensemble_unit_label(const std::vector<Tree>& unit, const std::vector<double>& fv) {
    double s = unit.size() == 1 ? unit[0].score(fv) : forest_score(unit, fv);
    return s >= 0.5 ? kRelevant : kNotRelevant;
}

// AdaBoost.M1 with pluggable weak-learner training.
template <typename TrainWeak>
void adaboost(const Dataset& data, std::size_t rounds, TrainWeak&& train_weak,
              std::vector<std::pair<std::vector<Tree>, double>>& members) {
    std::vector<double> w(data.size(), 1.0 / static_cast<double>(data.size()));
    for (std::size_t r = 0; r < rounds; ++r) {
        std::vector<Tree> weak = train_weak(r, w);
        double err = 0;
        std::vector<int> predicted(data.size());
        for (std::size_t i = 0; i < data.size(); ++i) {
            predicted[i] = ensemble_unit_label(weak, data.features[i]);
            if (predicted[i] != data.labels[i]) err += w[i];
        }
        if (err >= 0.5) break;
        if (err == 0) {
            members.emplace_back(std::move(weak), std::log((1 - 1e-10) / 1e-10) / 2);
            break;
        }
        double alpha = 0.5 * std::log((1 - err) / err);
        for (std::size_t i = 0; i < data.size(); ++i)
            w[i] *= std::exp(predicted[i] == data.labels[i] ? -alpha : alpha);
        double sum = 0;
        for (double x : w) sum += x;
        for (double& x : w) x /= sum;
        members.emplace_back(std::move(weak), alpha);
    }
}

}  // namespace

const char* algorithm_name(Algorithm a) { return kAlgoNames[static_cast<int>(a)]; }

std::optional<Algorithm> algorithm_from_name(const std::string& name) {
    for (int i = 0; i < 5; ++i)
        if (name == kAlgoNames[i]) return static_cast<Algorithm>(i);
    return std::nullopt;
}

double Tree::score(const std::vector<double>& fv) const {
    int at = 0;
    while (nodes[at].feature >= 0)
        at = fv[nodes[at].feature] <= nodes[at].threshold ? nodes[at].left : nodes[at].right;
    return nodes[at].relevant_fraction;
}

TrainedModel train(const ModelSpec& spec, const Dataset& data) {
    if (data.size() == 0) throw TrainingError("empty training dataset");
    for (const auto& row : data.features)
        if (row.size() != data.feature_count)
            throw TrainingError("row width differs from feature_count");

    TrainedModel model;
    model.spec = spec;
    model.feature_count = data.feature_count;

    bool has[2] = {false, false};
    for (int l : data.labels) has[l] = true;
    if (!has[0] || !has[1]) {
        model.constant = true;
        model.constant_score = has[1] ? 1.0 : 0.0;
        return model;
    }

    switch (spec.algorithm) {
        case Algorithm::DecisionTree: {
            TreeTrainer trainer{data};
            model.members.emplace_back(std::vector<Tree>{trainer.run(all_rows(data))}, 1.0);
            break;
        }
        case Algorithm::RandomForest:
            model.members.emplace_back(train_forest(data, spec.tree_count, spec.seed), 1.0);
            break;
        case Algorithm::NaiveBayes:
            model.nb = train_nb(data);
            break;
        case Algorithm::AdaBoostStumps:
            adaboost(data, spec.boost_rounds,
                     [&](std::size_t, const std::vector<double>& w) {
                         TreeTrainer trainer{data};
                         trainer.weights = &w;
                         trainer.max_depth = 1;
                         return std::vector<Tree>{trainer.run(all_rows(data))};
                     },
                     model.members);
            break;
        case Algorithm::AdaBoostForest:
            adaboost(data, spec.boost_rounds,
                     [&](std::size_t r, const std::vector<double>& w) {
                         // weight-proportional resample, then a forest on it
                         std::mt19937_64 rng(mix_seed(spec.seed, 0x4000 + r));
                         std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
                         Dataset resampled;
                         resampled.feature_count = data.feature_count;
                         for (std::size_t i = 0; i < data.size(); ++i) {
                             std::size_t j = pick(rng);
                             resampled.add(data.features[j], data.labels[j]);
                         }
                         return train_forest(resampled, spec.tree_count,
                                             mix_seed(spec.seed, 0x8000 + r));
                     },
                     model.members);
            break;
    }
    if (model.members.empty() && !model.nb) {
        // boosting that halted before any usable round: fall back to the prior
        double relevant = 0;
        for (int l : data.labels) relevant += l;
        model.constant = true;
        model.constant_score = relevant / static_cast<double>(data.size());
    }
    return model;
}

Prediction predict(const TrainedModel& model, const std::vector<double>& fv) {
    if (fv.size() != model.feature_count)
        throw std::invalid_argument("feature vector width differs from the trained model");
    double score = 0;
    if (model.constant) {
        score = model.constant_score;
    } else if (model.nb) {
        score = nb_score(*model.nb, fv);
    } else if (model.spec.algorithm == Algorithm::DecisionTree) {
        score = model.members[0].first[0].score(fv);
    } else if (model.spec.algorithm == Algorithm::RandomForest) {
        score = forest_score(model.members[0].first, fv);
    } else {
        double vote = 0, total = 0;
        for (const auto& [unit, alpha] : model.members) {
            if (ensemble_unit_label(unit, fv) == kRelevant) vote += alpha;
            total += alpha;
        }
        score = total > 0 ? vote / total : 0;
    }
    return {score >= 0.5 ? kRelevant : kNotRelevant, score};
}

namespace {

constexpr const char* kMagic = "CORECML1";

void write_tree(std::ostream& os, const Tree& t) {
    os << "tree " << t.nodes.size() << '\n';
    for (const TreeNode& n : t.nodes)
        os << n.feature << ' ' << n.threshold << ' ' << n.relevant_fraction << ' ' << n.left << ' '
           << n.right << '\n';
}

std::string expect_line(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ModelFormatError("truncated model file");
    return line;
}

Tree read_tree(std::istream& is) {
    std::istringstream head(expect_line(is));
    std::string tag;
    std::size_t count = 0;
    if (!(head >> tag >> count) || tag != "tree") throw ModelFormatError("bad tree header");
    Tree t;
    for (std::size_t i = 0; i < count; ++i) {
        std::istringstream row(expect_line(is));
        TreeNode n;
        if (!(row >> n.feature >> n.threshold >> n.relevant_fraction >> n.left >> n.right))
            throw ModelFormatError("bad tree node");
        t.nodes.push_back(n);
    }
    if (t.nodes.empty()) throw ModelFormatError("empty tree");
    return t;
}

}  // namespace

std::string save(const TrainedModel& model) {
    std::ostringstream os;
    os.precision(17);
    os << kMagic << '\n';
    os << algorithm_name(model.spec.algorithm) << ' ' << model.spec.tree_count << ' '
       << model.spec.boost_rounds << ' ' << model.spec.seed << ' ' << model.feature_count << '\n';
    os << "constant " << (model.constant ? 1 : 0) << ' ' << model.constant_score << '\n';
    os << "members " << model.members.size() << '\n';
    for (const auto& [unit, alpha] : model.members) {
        os << "member " << unit.size() << ' ' << alpha << '\n';
        for (const Tree& t : unit) write_tree(os, t);
    }
    os << "nb " << (model.nb ? 1 : 0) << '\n';
    if (model.nb) {
        os << model.nb->prior[0] << ' ' << model.nb->prior[1] << '\n';
        for (int c : {0, 1}) {
            for (std::size_t f = 0; f < model.feature_count; ++f)
                os << model.nb->mean[c][f] << (f + 1 == model.feature_count ? '\n' : ' ');
            for (std::size_t f = 0; f < model.feature_count; ++f)
                os << model.nb->variance[c][f] << (f + 1 == model.feature_count ? '\n' : ' ');
        }
    }
    return os.str();
}

TrainedModel load(const std::string& bytes) {
    std::istringstream is(bytes);
    if (expect_line(is) != kMagic) throw ModelFormatError("not a model file");
    TrainedModel model;
    {
        std::istringstream head(expect_line(is));
        std::string algo;
        if (!(head >> algo >> model.spec.tree_count >> model.spec.boost_rounds >>
              model.spec.seed >> model.feature_count))
            throw ModelFormatError("bad model header");
        auto a = algorithm_from_name(algo);
        if (!a) throw ModelFormatError("unknown algorithm: " + algo);
        model.spec.algorithm = *a;
    }
    {
        std::istringstream line(expect_line(is));
        std::string tag;
        int flag = 0;
        if (!(line >> tag >> flag >> model.constant_score) || tag != "constant")
            throw ModelFormatError("bad constant record");
        model.constant = flag != 0;
    }
    std::size_t member_count = 0;
    {
        std::istringstream line(expect_line(is));
        std::string tag;
        if (!(line >> tag >> member_count) || tag != "members")
            throw ModelFormatError("bad members record");
    }
    for (std::size_t m = 0; m < member_count; ++m) {
        std::istringstream line(expect_line(is));
        std::string tag;
        std::size_t unit_size = 0;
        double alpha = 0;
        if (!(line >> tag >> unit_size >> alpha) || tag != "member")
            throw ModelFormatError("bad member record");
        std::vector<Tree> unit;
        for (std::size_t t = 0; t < unit_size; ++t) unit.push_back(read_tree(is));
        model.members.emplace_back(std::move(unit), alpha);
    }
    {
        std::istringstream line(expect_line(is));
        std::string tag;
        int flag = 0;
        if (!(line >> tag >> flag) || tag != "nb") throw ModelFormatError("bad nb record");
        if (flag) {
            GaussianNB nb;
            std::istringstream priors(expect_line(is));
            if (!(priors >> nb.prior[0] >> nb.prior[1])) throw ModelFormatError("bad priors");
            for (int c : {0, 1}) {
                nb.mean[c].resize(model.feature_count);
                nb.variance[c].resize(model.feature_count);
                std::istringstream means(expect_line(is));
                for (auto& v : nb.mean[c])
                    if (!(means >> v)) throw ModelFormatError("bad means");
                std::istringstream vars(expect_line(is));
                for (auto& v : nb.variance[c])
                    if (!(vars >> v)) throw ModelFormatError("bad variances");
            }
            model.nb = std::move(nb);
        }
    }
    return model;
}

}  // namespace corec::ml
