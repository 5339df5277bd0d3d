#include <iostream>
#include <string>

#include "claimrank/cli.hpp"

#include "CLI11.hpp"

namespace {

// Options shared by the corpus-consuming commands.
void add_common(CLI::App* cmd, claimrank::RunConfig& config) {
    cmd->add_option("--corpus", config.corpus_path, "Corpus JSONL path")->required();
    cmd->add_option("--embedder", config.embedder,
                    "Embedding source: tfidf or file:<path> (default tfidf)");
    cmd->add_option("--top-k", config.top_k, "Sentences per explanation (default 5)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--damping", config.damping, "PageRank damping factor (default 0.85)");
    cmd->add_option("--tol", config.tol, "Power-iteration L1 tolerance (default 1e-6)");
    cmd->add_option("--max-iter", config.max_iter, "Power-iteration cap (default 100)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", config.seed, "Master RNG seed (default 42)");
    cmd->add_option("--out", config.output_path, "Output file (default stdout)");
}

void add_method(CLI::App* cmd, claimrank::RunConfig& config, bool repeatable) {
    auto* opt = cmd->add_option(
        "--method", config.methods,
        "Ranking method: biased-textrank, textrank, embedding-similarity, random");
    if (!repeatable) opt->expected(0, 1);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Claim-focused extractive explanations via biased sentence ranking"};
    app.require_subcommand(1);

    claimrank::RunConfig config;
    std::string reference_mode = "explanation";

    auto* explain = app.add_subcommand("explain", "Rank sentences and emit explanations (JSONL)");
    add_common(explain, config);
    add_method(explain, config, false);

    auto* evaluate = app.add_subcommand("evaluate", "Score explanations against references (CSV)");
    add_common(evaluate, config);
    add_method(evaluate, config, true);
    evaluate->add_option("--reference-mode", reference_mode,
                         "Reference source: explanation or relevant-sentences")
        ->check(CLI::IsMember({"explanation", "relevant-sentences"}));
    evaluate->add_flag("--stemming", config.stemming, "Porter-stem tokens before scoring");

    auto* downstream =
        app.add_subcommand("downstream", "Train per-question classifiers on explanations (CSV)");
    add_common(downstream, config);
    add_method(downstream, config, true);
    downstream->add_option("--question", config.question,
                           "Question id to evaluate (default: all present)")
        ->check(CLI::Range(1, 9));
    downstream->add_option("--runs", config.runs, "Training runs per question (default 10)")
        ->check(CLI::PositiveNumber);

    auto* prune = app.add_subcommand("prune", "Iteratively drop least important sentences (JSONL)");
    add_common(prune, config);
    prune->add_option("--rounds", config.rounds, "Maximum removals per document (default 5)")
        ->check(CLI::PositiveNumber);
    prune->add_flag("--rerank-each-round", config.rerank_each_round,
                    "Re-rank surviving sentences before each removal");

    auto* bench = app.add_subcommand("bench", "Measure per-document ranking latency (CSV)");
    add_common(bench, config);
    add_method(bench, config, false);

    auto* stats = app.add_subcommand("stats", "Aggregate reference explanation statistics (CSV)");
    add_common(stats, config);

    auto* adapt = app.add_subcommand("adapt", "Convert a source dataset to corpus JSONL");
    adapt->add_option("--corpus", config.corpus_path,
                      "Source path (TSV file or review directory)")
        ->required();
    adapt->add_option("--format", config.adapt_format, "Source format: liarplus or health-reviews")
        ->required();
    adapt->add_option("--col-claim", config.col_claim, "liarplus: 0-based claim column");
    adapt->add_option("--col-report", config.col_report, "liarplus: 0-based report column");
    adapt->add_option("--col-justification", config.col_justification,
                      "liarplus: 0-based justification column");
    adapt->add_option("--col-split", config.col_split, "liarplus: 0-based split column");
    adapt->add_option("--col-id", config.col_id, "liarplus: 0-based id column");
    adapt->add_option("--default-split", config.default_split,
                      "liarplus: split when no split column is mapped (default train)");
    adapt->add_option("--seed", config.seed, "health-reviews: split assignment seed");
    adapt->add_option("--out", config.output_path, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    config.command = app.get_subcommands().front()->get_name();
    config.reference_mode = reference_mode == "explanation"
                                ? claimrank::ReferenceMode::explanation
                                : claimrank::ReferenceMode::relevant_sentences;
    return claimrank::run_command(config, std::cout, std::cerr);
}
