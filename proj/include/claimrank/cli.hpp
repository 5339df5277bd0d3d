#ifndef CLAIMRANK_CLI_HPP
#define CLAIMRANK_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "claimrank/corpus.hpp"
#include "claimrank/downstream.hpp"
#include "claimrank/embeddings.hpp"
#include "claimrank/ranking.hpp"

namespace claimrank {

enum class ReferenceMode { explanation, relevant_sentences };

struct RunConfig {
    std::string command;  // explain | evaluate | downstream | prune | bench | stats | adapt
    std::string corpus_path;
    std::string embedder = "tfidf";  // "tfidf" or "file:<path>"
    std::vector<std::string> methods = {"biased-textrank"};
    int top_k = 5;
    double damping = 0.85;
    double tol = 1e-6;
    int max_iter = 100;
    std::uint64_t seed = 42;
    std::string output_path;  // empty means stdout
    bool stemming = false;
    int question = 0;  // 0 means all questions
    int runs = 10;
    ReferenceMode reference_mode = ReferenceMode::explanation;
    int rounds = 5;
    bool rerank_each_round = false;

    // adapt command only
    std::string adapt_format;  // "liarplus" | "health-reviews"
    int col_claim = -1;
    int col_report = -1;
    int col_justification = -1;
    int col_split = -1;
    int col_id = -1;
    std::string default_split = "train";
};

// Builds the per-record explanation function for one method name. Methods:
// biased-textrank, textrank, embedding-similarity, random. Unknown names
// raise ConfigError.
Explainer make_explainer(const std::string& method, const EmbeddingProvider& provider,
                         const RankParams& params, std::uint64_t seed);

std::unique_ptr<EmbeddingProvider> make_provider(const RunConfig& config,
                                                 const std::vector<CorpusRecord>& records);

// Dispatches one command. Results go to `out` (or config.output_path when
// set); the effective config echo and diagnostics go to `err`. Returns the
// process exit code: 0 success, 1 data error, 2 usage error.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace claimrank

#endif  // CLAIMRANK_CLI_HPP
