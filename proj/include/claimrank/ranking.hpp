#ifndef CLAIMRANK_RANKING_HPP
#define CLAIMRANK_RANKING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "claimrank/corpus.hpp"
#include "claimrank/embeddings.hpp"

namespace claimrank {

// Dense sentence-similarity graph. weights is symmetric with zero diagonal
// and non-negative entries (negative cosines clamped); transition is the
// row-stochastic matrix driving the random walk, with all-zero rows replaced
// by a uniform distribution over the other nodes (over the node itself when
// n == 1).
struct SimilarityGraph {
    std::size_t n = 0;
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> transition;

    static SimilarityGraph from_weights(std::vector<std::vector<double>> weights);
};

SimilarityGraph build_graph(const EmbeddingSet& embeddings);

// Probability vector used on random-walk teleportation.
struct RestartDistribution {
    std::vector<double> probabilities;

    static RestartDistribution uniform(std::size_t n);
    // Normalizes non-negative weights to sum 1; all-zero input falls back to
    // uniform. Validates the result sums to 1 within 1e-12.
    static RestartDistribution from_weights(const std::vector<double>& weights);
};

// Component i: max(0, cosine(sentence_i, bias)), normalized.
RestartDistribution bias_restart(const EmbeddingSet& embeddings);

struct PowerIterationResult {
    std::vector<double> scores;
    int iterations = 0;
    bool converged = false;
};

// Damped power iteration s <- (1-d)*restart + d*T^t*s from s0 = restart,
// stopping when the L1 change drops below tol or after max_iter sweeps.
// Scores are renormalized to sum 1 on return.
PowerIterationResult power_iteration(const SimilarityGraph& graph,
                                     const RestartDistribution& restart, double damping,
                                     double tol, int max_iter);

struct RankParams {
    double damping = 0.85;
    double tol = 1e-6;
    int max_iter = 100;
    int top_k = 5;
};

struct RankResult {
    std::vector<double> scores;
    std::vector<int> selected;  // document order, strictly increasing
    std::string explanation_text;
    int iterations_used = 0;
    bool converged = false;
};

// k highest-scoring indices (ties -> lower index), reordered into document
// order; explanation joins the selected texts with single spaces. k > n
// selects everything.
std::pair<std::vector<int>, std::string> select_top_k(const std::vector<double>& scores,
                                                      const std::vector<Sentence>& sentences,
                                                      int k);

// Uniform-restart PageRank over the sentence graph.
RankResult textrank(const SimilarityGraph& graph, const std::vector<Sentence>& sentences,
                    const RankParams& params);

// Bias-weighted restart: sentences similar to the query attract restart mass.
RankResult biased_textrank(const SimilarityGraph& graph, const RestartDistribution& restart,
                           const std::vector<Sentence>& sentences, const RankParams& params);

// Scores are the raw cosines to the bias vector; no graph, no iteration.
RankResult embedding_similarity_baseline(const EmbeddingSet& embeddings,
                                         const std::vector<Sentence>& sentences, int k);

// Uniformly random scores from a seeded generator, normalized to sum 1.
RankResult random_baseline(const std::vector<Sentence>& sentences, int k, std::uint64_t seed);

enum class PruneVariant {
    rank_once,         // rank with biased scores once, remove cumulatively
    rerank_each_round  // re-rank the surviving sentences before each removal
};

struct PruneResult {
    std::vector<int> removal_order;       // original sentence indices, one per round
    std::vector<Document> rounds;         // document state after each removal
};

// Repeatedly removes the least important sentence (biased ranking), at most
// `rounds` times, stopping early when a single sentence would remain.
// Throws DataError("nothing to prune") on single-sentence documents.
PruneResult prune_least_relevant(const Document& document, const EmbeddingSet& embeddings,
                                 int rounds, const RankParams& params,
                                 PruneVariant variant = PruneVariant::rank_once);

}  // namespace claimrank

#endif  // CLAIMRANK_RANKING_HPP
