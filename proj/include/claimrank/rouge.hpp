#ifndef CLAIMRANK_ROUGE_HPP
#define CLAIMRANK_ROUGE_HPP

#include <string>
#include <vector>

namespace claimrank {

struct RougeScore {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Clipped n-gram overlap (n = 1 or 2). Empty n-gram sets on either side give
// the all-zero score.
RougeScore rouge_n(const std::vector<std::string>& candidate,
                   const std::vector<std::string>& reference, int n);

// Sequence-level LCS over the full token sequences.
RougeScore rouge_l(const std::vector<std::string>& candidate,
                   const std::vector<std::string>& reference);

struct CorpusRouge {
    RougeScore rouge1;
    RougeScore rouge2;
    RougeScore rougeL;
    std::size_t pairs = 0;
};

// Arithmetic mean of per-pair P/R/F for each metric. Throws DataError on
// empty input.
CorpusRouge corpus_rouge(
    const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>& pairs);

}  // namespace claimrank

#endif  // CLAIMRANK_ROUGE_HPP
