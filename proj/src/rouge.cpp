#include "claimrank/rouge.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "claimrank/errors.hpp"

namespace claimrank {

namespace {

double f1_of(double p, double r) { return (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

std::map<std::vector<std::string>, int> ngram_counts(const std::vector<std::string>& tokens,
                                                     int n) {
    std::map<std::vector<std::string>, int> counts;
    if (static_cast<int>(tokens.size()) < n) return counts;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i)
        ++counts[std::vector<std::string>(tokens.begin() + static_cast<long>(i),
                                          tokens.begin() + static_cast<long>(i) + n)];
    return counts;
}

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.empty() || b.empty()) return 0;
    std::vector<std::size_t> prev(b.size() + 1, 0), curr(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            curr[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], curr[j - 1]);
        }
        prev.swap(curr);
    }
    return prev[b.size()];
}

}  // namespace

RougeScore rouge_n(const std::vector<std::string>& candidate,
                   const std::vector<std::string>& reference, int n) {
    if (n != 1 && n != 2) throw std::invalid_argument("rouge_n supports n = 1 or 2 only");
    const auto cand = ngram_counts(candidate, n);
    const auto ref = ngram_counts(reference, n);

    std::size_t cand_total = 0, ref_total = 0, overlap = 0;
    for (const auto& [gram, count] : cand) cand_total += static_cast<std::size_t>(count);
    for (const auto& [gram, count] : ref) ref_total += static_cast<std::size_t>(count);
    if (cand_total == 0 || ref_total == 0) return {};

    for (const auto& [gram, count] : cand) {
        const auto it = ref.find(gram);
        if (it != ref.end())
            overlap += static_cast<std::size_t>(std::min(count, it->second));
    }
    RougeScore score;
    score.precision = static_cast<double>(overlap) / static_cast<double>(cand_total);
    score.recall = static_cast<double>(overlap) / static_cast<double>(ref_total);
    score.f1 = f1_of(score.precision, score.recall);
    return score;
}

RougeScore rouge_l(const std::vector<std::string>& candidate,
                   const std::vector<std::string>& reference) {
    if (candidate.empty() || reference.empty()) return {};
    const double lcs = static_cast<double>(lcs_length(candidate, reference));
    RougeScore score;
    score.precision = lcs / static_cast<double>(candidate.size());
    score.recall = lcs / static_cast<double>(reference.size());
    score.f1 = f1_of(score.precision, score.recall);
    return score;
}

CorpusRouge corpus_rouge(
    const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>& pairs) {
    if (pairs.empty()) throw DataError("cannot aggregate an empty evaluation set");
    CorpusRouge agg;
    agg.pairs = pairs.size();
    auto add = [](RougeScore& sum, const RougeScore& s) {
        sum.precision += s.precision;
        sum.recall += s.recall;
        sum.f1 += s.f1;
    };
    for (const auto& [candidate, reference] : pairs) {
        add(agg.rouge1, rouge_n(candidate, reference, 1));
        add(agg.rouge2, rouge_n(candidate, reference, 2));
        add(agg.rougeL, rouge_l(candidate, reference));
    }
    const double inv = 1.0 / static_cast<double>(agg.pairs);
    for (RougeScore* s : {&agg.rouge1, &agg.rouge2, &agg.rougeL}) {
        s->precision *= inv;
        s->recall *= inv;
        s->f1 *= inv;
    }
    return agg;
}

}  // namespace claimrank
