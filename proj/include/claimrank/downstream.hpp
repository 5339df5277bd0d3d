#ifndef CLAIMRANK_DOWNSTREAM_HPP
#define CLAIMRANK_DOWNSTREAM_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "claimrank/corpus.hpp"

namespace claimrank {

// Sparse bag-of-words counts: (column, count) pairs, columns strictly
// increasing.
using SparseCounts = std::vector<std::pair<int, double>>;

struct LabeledExample {
    SparseCounts features;
    int label = 0;  // 1 satisfactory, 0 unsatisfactory or not_applicable
};

// Vocabulary over training-split explanation texts, lexicographic columns.
std::map<std::string, int> build_vocabulary(const std::vector<std::string>& training_texts);

// Token counts over the vocabulary; out-of-vocabulary tokens dropped.
SparseCounts featurize(const std::string& explanation_text,
                       const std::map<std::string, int>& vocabulary);

struct TrainConfig {
    int epochs = 20;
    double learning_rate = 0.1;
    std::uint64_t seed = 1;
};

// Logistic regression; weights cover the feature columns plus a trailing
// bias term.
struct LinearModel {
    std::vector<double> weights;
    TrainConfig config;
};

// SGD over logistic loss with a per-epoch shuffle keyed on the seed.
// Deterministic given (examples, feature_dim, config). Throws DataError when
// all examples share one class.
LinearModel train_classifier(const std::vector<LabeledExample>& examples, int feature_dim,
                             const TrainConfig& config);

// Probability >= 0.5 predicts the positive class.
int predict(const LinearModel& model, const SparseCounts& features);

struct EvalMetrics {
    double accuracy = 0.0;
    double f1_positive = 0.0;
    double f1_negative = 0.0;
};

// Accuracy plus one-vs-rest F1 for each class; F1 with an empty denominator
// reports 0.
EvalMetrics evaluate_classifier(const LinearModel& model,
                                const std::vector<LabeledExample>& test_examples);

struct ClassifierReport {
    int question_id = 0;
    std::string method;
    int runs = 0;
    double accuracy = 0.0;
    double f1_positive = 0.0;
    double f1_negative = 0.0;
    std::vector<EvalMetrics> per_run;
};

// Produces the explanation text a classifier sees for one record.
using Explainer = std::function<std::string(const CorpusRecord&)>;

struct ProtocolConfig {
    int runs = 10;
    TrainConfig training;  // seed field is overridden with 1..runs
};

// Filters the corpus to one question, generates explanations, trains and
// evaluates `runs` classifiers with seeds 1..runs on the fixed train/test
// split, and averages the metrics. Per-run values are retained for
// significance testing.
ClassifierReport run_downstream_protocol(const std::vector<CorpusRecord>& records,
                                         const Explainer& explainer, const std::string& method,
                                         int question_id, const ProtocolConfig& config);

struct WelchResult {
    double t = 0.0;
    double p = 1.0;
    bool degenerate = false;  // zero pooled variance
};

// Two-sided Welch t-test with Welch-Satterthwaite degrees of freedom. Both
// samples constant and equal: t = 0, p = 1. Zero variance with unequal
// means: p = 0, flagged degenerate. Requires >= 2 values per sample.
WelchResult welch_t_test(const std::vector<double>& sample_a, const std::vector<double>& sample_b);

}  // namespace claimrank

#endif  // CLAIMRANK_DOWNSTREAM_HPP
