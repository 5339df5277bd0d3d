#include "claimrank/downstream.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

#include "claimrank/errors.hpp"

namespace claimrank {

std::map<std::string, int> build_vocabulary(const std::vector<std::string>& training_texts) {
    std::set<std::string> tokens;
    for (const std::string& text : training_texts) {
        const auto toks = tokenize(text);
        tokens.insert(toks.begin(), toks.end());
    }
    std::map<std::string, int> vocab;
    int column = 0;
    for (const std::string& t : tokens) vocab.emplace(t, column++);
    return vocab;
}

SparseCounts featurize(const std::string& explanation_text,
                       const std::map<std::string, int>& vocabulary) {
    std::map<int, double> counts;
    for (const std::string& t : tokenize(explanation_text)) {
        const auto it = vocabulary.find(t);
        if (it != vocabulary.end()) counts[it->second] += 1.0;
    }
    return SparseCounts(counts.begin(), counts.end());
}

namespace {

// Platform-stable uniforms and shuffling: the standard distributions and
// std::shuffle are implementation-defined, so raw engine draws are used.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename T>
void shuffle_stable(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng() % i]);
}

double raw_score(const LinearModel& model, const SparseCounts& features) {
    double z = model.weights.back();  // bias term
    for (const auto& [column, count] : features)
        z += model.weights[static_cast<std::size_t>(column)] * count;
    return z;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

LinearModel train_classifier(const std::vector<LabeledExample>& examples, int feature_dim,
                             const TrainConfig& config) {
    if (examples.empty()) throw DataError("cannot train on an empty example set");
    if (feature_dim < 0) throw std::invalid_argument("feature_dim must be non-negative");
    bool has_pos = false, has_neg = false;
    for (const auto& ex : examples) {
        if (ex.label == 1)
            has_pos = true;
        else
            has_neg = true;
        for (const auto& [column, count] : ex.features)
            if (column < 0 || column >= feature_dim)
                throw std::invalid_argument("feature column out of range");
    }
    if (!has_pos || !has_neg)
        throw DataError("training set contains a single class");

    std::mt19937_64 rng(config.seed);
    LinearModel model;
    model.config = config;
    model.weights.resize(static_cast<std::size_t>(feature_dim) + 1);
    for (double& w : model.weights) w = (uniform01(rng) - 0.5) * 0.02;

    std::vector<std::size_t> order(examples.size());
    std::iota(order.begin(), order.end(), 0);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        shuffle_stable(order, rng);
        for (std::size_t idx : order) {
            const LabeledExample& ex = examples[idx];
            const double p = sigmoid(raw_score(model, ex.features));
            const double grad = p - static_cast<double>(ex.label);
            const double step = config.learning_rate * grad;
            for (const auto& [column, count] : ex.features)
                model.weights[static_cast<std::size_t>(column)] -= step * count;
            model.weights.back() -= step;
        }
    }
    return model;
}

int predict(const LinearModel& model, const SparseCounts& features) {
    return sigmoid(raw_score(model, features)) >= 0.5 ? 1 : 0;
}

EvalMetrics evaluate_classifier(const LinearModel& model,
                                const std::vector<LabeledExample>& test_examples) {
    if (test_examples.empty()) throw DataError("cannot evaluate on an empty test set");
    std::size_t correct = 0;
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    for (const auto& ex : test_examples) {
        const int pred = predict(model, ex.features);
        if (pred == ex.label) ++correct;
        if (pred == 1 && ex.label == 1) ++tp;
        if (pred == 1 && ex.label == 0) ++fp;
        if (pred == 0 && ex.label == 1) ++fn;
        if (pred == 0 && ex.label == 0) ++tn;
    }
    auto f1 = [](std::size_t tp_, std::size_t fp_, std::size_t fn_) {
        const double denom = static_cast<double>(2 * tp_ + fp_ + fn_);
        return denom > 0.0 ? 2.0 * static_cast<double>(tp_) / denom : 0.0;
    };
    EvalMetrics m;
    m.accuracy = static_cast<double>(correct) / static_cast<double>(test_examples.size());
    m.f1_positive = f1(tp, fp, fn);
    m.f1_negative = f1(tn, fn, fp);  // negative class: swap roles
    return m;
}

ClassifierReport run_downstream_protocol(const std::vector<CorpusRecord>& records,
                                         const Explainer& explainer, const std::string& method,
                                         int question_id, const ProtocolConfig& config) {
    if (config.runs < 1) throw std::invalid_argument("runs must be >= 1");

    std::vector<const CorpusRecord*> train_records, test_records;
    for (const CorpusRecord& rec : records) {
        if (!rec.question_id || *rec.question_id != question_id) continue;
        if (!rec.satisfactory_label) continue;
        (rec.split == Split::test ? test_records : train_records).push_back(&rec);
    }
    if (train_records.empty() || test_records.empty())
        throw DataError("question " + std::to_string(question_id) +
                        " lacks train or test records");

    auto label_of = [](const CorpusRecord& rec) {
        return *rec.satisfactory_label == SatisfactoryLabel::satisfactory ? 1 : 0;
    };

    std::vector<std::string> train_texts;
    train_texts.reserve(train_records.size());
    for (const CorpusRecord* rec : train_records) train_texts.push_back(explainer(*rec));
    const auto vocabulary = build_vocabulary(train_texts);

    std::vector<LabeledExample> train_set, test_set;
    train_set.reserve(train_records.size());
    for (std::size_t i = 0; i < train_records.size(); ++i)
        train_set.push_back({featurize(train_texts[i], vocabulary), label_of(*train_records[i])});
    test_set.reserve(test_records.size());
    for (const CorpusRecord* rec : test_records)
        test_set.push_back({featurize(explainer(*rec), vocabulary), label_of(*rec)});

    ClassifierReport report;
    report.question_id = question_id;
    report.method = method;
    report.runs = config.runs;
    for (int run = 1; run <= config.runs; ++run) {
        TrainConfig tc = config.training;
        tc.seed = static_cast<std::uint64_t>(run);
        const auto model = train_classifier(train_set, static_cast<int>(vocabulary.size()), tc);
        report.per_run.push_back(evaluate_classifier(model, test_set));
    }
    for (const EvalMetrics& m : report.per_run) {
        report.accuracy += m.accuracy;
        report.f1_positive += m.f1_positive;
        report.f1_negative += m.f1_negative;
    }
    const double inv = 1.0 / static_cast<double>(config.runs);
    report.accuracy *= inv;
    report.f1_positive *= inv;
    report.f1_negative *= inv;
    return report;
}

WelchResult welch_t_test(const std::vector<double>& sample_a,
                         const std::vector<double>& sample_b) {
    if (sample_a.size() < 2 || sample_b.size() < 2)
        throw std::invalid_argument("welch_t_test needs at least 2 values per sample");

    auto mean_var = [](const std::vector<double>& s) {
        const double n = static_cast<double>(s.size());
        const double mean = std::accumulate(s.begin(), s.end(), 0.0) / n;
        double var = 0.0;
        for (double x : s) var += (x - mean) * (x - mean);
        var /= (n - 1.0);  // sample variance
        return std::pair<double, double>(mean, var);
    };
    const auto [mean_a, var_a] = mean_var(sample_a);
    const auto [mean_b, var_b] = mean_var(sample_b);
    const double na = static_cast<double>(sample_a.size());
    const double nb = static_cast<double>(sample_b.size());
    const double se_a = var_a / na;
    const double se_b = var_b / nb;

    WelchResult result;
    if (se_a + se_b == 0.0) {
        result.degenerate = true;
        if (mean_a == mean_b) {
            result.t = 0.0;
            result.p = 1.0;
        } else {
            result.t = mean_a > mean_b ? std::numeric_limits<double>::infinity()
                                       : -std::numeric_limits<double>::infinity();
            result.p = 0.0;
        }
        return result;
    }
    result.t = (mean_a - mean_b) / std::sqrt(se_a + se_b);
    const double df = (se_a + se_b) * (se_a + se_b) /
                      (se_a * se_a / (na - 1.0) + se_b * se_b / (nb - 1.0));
    const boost::math::students_t dist(df);
    result.p = 2.0 * boost::math::cdf(dist, -std::abs(result.t));
    return result;
}

}  // namespace claimrank
