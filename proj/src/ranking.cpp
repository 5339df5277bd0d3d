#include "claimrank/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "claimrank/errors.hpp"

namespace claimrank {

SimilarityGraph SimilarityGraph::from_weights(std::vector<std::vector<double>> weights) {
    SimilarityGraph g;
    g.n = weights.size();
    if (g.n == 0) throw DataError("similarity graph needs at least one node");
    for (std::size_t i = 0; i < g.n; ++i) {
        if (weights[i].size() != g.n)
            throw std::invalid_argument("weight matrix must be square");
        weights[i][i] = 0.0;
        for (std::size_t j = 0; j < g.n; ++j)
            if (weights[i][j] < 0.0) weights[i][j] = 0.0;
    }
    g.transition.assign(g.n, std::vector<double>(g.n, 0.0));
    for (std::size_t i = 0; i < g.n; ++i) {
        const double row_sum =
            std::accumulate(weights[i].begin(), weights[i].end(), 0.0);
        if (row_sum > 0.0) {
            for (std::size_t j = 0; j < g.n; ++j) g.transition[i][j] = weights[i][j] / row_sum;
        } else if (g.n == 1) {
            g.transition[i][i] = 1.0;
        } else {
            // dangling node: jump uniformly to any other node
            const double p = 1.0 / static_cast<double>(g.n - 1);
            for (std::size_t j = 0; j < g.n; ++j) g.transition[i][j] = (j == i) ? 0.0 : p;
        }
    }
    g.weights = std::move(weights);
    return g;
}

SimilarityGraph build_graph(const EmbeddingSet& embeddings) {
    const std::size_t n = embeddings.sentence_vectors.size();
    if (n == 0) throw DataError("cannot build a graph from an empty embedding set");
    std::vector<std::vector<double>> weights(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double sim = std::max(
                0.0, cosine_similarity(embeddings.sentence_vectors[i],
                                       embeddings.sentence_vectors[j]));
            weights[i][j] = sim;
            weights[j][i] = sim;
        }
    }
    return SimilarityGraph::from_weights(std::move(weights));
}

RestartDistribution RestartDistribution::uniform(std::size_t n) {
    if (n == 0) throw std::invalid_argument("restart distribution needs at least one component");
    RestartDistribution r;
    r.probabilities.assign(n, 1.0 / static_cast<double>(n));
    return r;
}

RestartDistribution RestartDistribution::from_weights(const std::vector<double>& weights) {
    if (weights.empty())
        throw std::invalid_argument("restart distribution needs at least one component");
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("restart weights must be non-negative");
        sum += w;
    }
    if (sum <= 0.0) return uniform(weights.size());
    RestartDistribution r;
    r.probabilities.reserve(weights.size());
    for (double w : weights) r.probabilities.push_back(w / sum);
    const double check =
        std::accumulate(r.probabilities.begin(), r.probabilities.end(), 0.0);
    if (std::abs(check - 1.0) > 1e-12)
        throw std::invalid_argument("restart distribution failed to normalize");
    return r;
}

RestartDistribution bias_restart(const EmbeddingSet& embeddings) {
    std::vector<double> sims;
    sims.reserve(embeddings.sentence_vectors.size());
    for (const auto& v : embeddings.sentence_vectors)
        sims.push_back(std::max(0.0, cosine_similarity(v, embeddings.bias_vector)));
    return RestartDistribution::from_weights(sims);
}

PowerIterationResult power_iteration(const SimilarityGraph& graph,
                                     const RestartDistribution& restart, double damping,
                                     double tol, int max_iter) {
    const std::size_t n = graph.n;
    if (restart.probabilities.size() != n)
        throw std::invalid_argument("restart dimension does not match graph size");
    if (damping <= 0.0 || damping >= 1.0)
        throw std::invalid_argument("damping must lie in (0, 1)");
    if (tol <= 0.0 || max_iter < 1)
        throw std::invalid_argument("tol must be positive and max_iter >= 1");

    PowerIterationResult result;
    result.scores = restart.probabilities;
    std::vector<double> next(n, 0.0);
    for (int iter = 1; iter <= max_iter; ++iter) {
        for (std::size_t j = 0; j < n; ++j)
            next[j] = (1.0 - damping) * restart.probabilities[j];
        for (std::size_t i = 0; i < n; ++i) {
            const double si = damping * result.scores[i];
            if (si == 0.0) continue;
            const auto& row = graph.transition[i];
            for (std::size_t j = 0; j < n; ++j) next[j] += si * row[j];
        }
        double delta = 0.0;
        for (std::size_t j = 0; j < n; ++j) delta += std::abs(next[j] - result.scores[j]);
        result.scores.swap(next);
        result.iterations = iter;
        if (delta < tol) {
            result.converged = true;
            break;
        }
    }
    const double sum = std::accumulate(result.scores.begin(), result.scores.end(), 0.0);
    if (sum > 0.0)
        for (double& s : result.scores) s /= sum;
    return result;
}

std::pair<std::vector<int>, std::string> select_top_k(const std::vector<double>& scores,
                                                      const std::vector<Sentence>& sentences,
                                                      int k) {
    if (k < 1) throw std::invalid_argument("top-k selection needs k >= 1");
    if (scores.size() != sentences.size())
        throw std::invalid_argument("score count does not match sentence count");

    std::vector<int> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return scores[static_cast<std::size_t>(a)] > scores[static_cast<std::size_t>(b)];
    });
    const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), order.size());
    std::vector<int> selected(order.begin(), order.begin() + static_cast<long>(take));
    std::sort(selected.begin(), selected.end());

    std::string text;
    for (int idx : selected) {
        if (!text.empty()) text += ' ';
        text += sentences[static_cast<std::size_t>(idx)].text;
    }
    return {std::move(selected), std::move(text)};
}

namespace {

RankResult rank_from_scores(std::vector<double> scores, const std::vector<Sentence>& sentences,
                            int k, int iterations, bool converged) {
    RankResult r;
    auto [selected, text] = select_top_k(scores, sentences, k);
    r.scores = std::move(scores);
    r.selected = std::move(selected);
    r.explanation_text = std::move(text);
    r.iterations_used = iterations;
    r.converged = converged;
    return r;
}

}  // namespace

RankResult textrank(const SimilarityGraph& graph, const std::vector<Sentence>& sentences,
                    const RankParams& params) {
    const auto restart = RestartDistribution::uniform(graph.n);
    auto pi = power_iteration(graph, restart, params.damping, params.tol, params.max_iter);
    return rank_from_scores(std::move(pi.scores), sentences, params.top_k, pi.iterations,
                            pi.converged);
}

RankResult biased_textrank(const SimilarityGraph& graph, const RestartDistribution& restart,
                           const std::vector<Sentence>& sentences, const RankParams& params) {
    auto pi = power_iteration(graph, restart, params.damping, params.tol, params.max_iter);
    return rank_from_scores(std::move(pi.scores), sentences, params.top_k, pi.iterations,
                            pi.converged);
}

RankResult embedding_similarity_baseline(const EmbeddingSet& embeddings,
                                         const std::vector<Sentence>& sentences, int k) {
    std::vector<double> scores;
    scores.reserve(embeddings.sentence_vectors.size());
    for (const auto& v : embeddings.sentence_vectors)
        scores.push_back(cosine_similarity(v, embeddings.bias_vector));
    return rank_from_scores(std::move(scores), sentences, k, 0, true);
}

RankResult random_baseline(const std::vector<Sentence>& sentences, int k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> scores;
    scores.reserve(sentences.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        // top 53 bits -> uniform double in [0,1); identical on every platform
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        scores.push_back(u);
        sum += u;
    }
    if (sum > 0.0)
        for (double& s : scores) s /= sum;
    else
        scores.assign(sentences.size(), 1.0 / static_cast<double>(sentences.size()));
    return rank_from_scores(std::move(scores), sentences, k, 0, true);
}

PruneResult prune_least_relevant(const Document& document, const EmbeddingSet& embeddings,
                                 int rounds, const RankParams& params, PruneVariant variant) {
    const std::size_t n = document.sentences.size();
    if (n < 2) throw DataError("nothing to prune");
    if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
    if (embeddings.sentence_vectors.size() != n)
        throw std::invalid_argument("embedding count does not match sentence count");

    // surviving original indices, in document order
    std::vector<int> alive(n);
    std::iota(alive.begin(), alive.end(), 0);

    std::vector<double> base_scores;
    if (variant == PruneVariant::rank_once) {
        const auto graph = build_graph(embeddings);
        base_scores = power_iteration(graph, bias_restart(embeddings), params.damping,
                                      params.tol, params.max_iter)
                          .scores;
    }

    PruneResult result;
    const int max_rounds = std::min<int>(rounds, static_cast<int>(n) - 1);
    for (int round = 0; round < max_rounds; ++round) {
        std::size_t victim_pos = 0;
        if (variant == PruneVariant::rank_once) {
            for (std::size_t p = 1; p < alive.size(); ++p) {
                // ties: higher original index removed, so the lower survives
                if (base_scores[static_cast<std::size_t>(alive[p])] <=
                    base_scores[static_cast<std::size_t>(alive[victim_pos])])
                    victim_pos = p;
            }
        } else {
            const auto current = subset(embeddings, alive);
            const auto graph = build_graph(current);
            const auto scores = power_iteration(graph, bias_restart(current), params.damping,
                                                params.tol, params.max_iter)
                                    .scores;
            for (std::size_t p = 1; p < scores.size(); ++p)
                if (scores[p] <= scores[victim_pos]) victim_pos = p;
        }
        result.removal_order.push_back(alive[victim_pos]);
        alive.erase(alive.begin() + static_cast<long>(victim_pos));

        std::vector<Sentence> kept;
        kept.reserve(alive.size());
        for (int idx : alive) kept.push_back(document.sentences[static_cast<std::size_t>(idx)]);
        result.rounds.push_back(document_from_sentences(document.id, kept));
    }
    return result;
}

}  // namespace claimrank
