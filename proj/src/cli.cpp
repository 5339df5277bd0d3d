#include "claimrank/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "claimrank/errors.hpp"
#include "claimrank/rouge.hpp"
#include "claimrank/stemmer.hpp"

#include "json.hpp"

namespace claimrank {

namespace {

using nlohmann::json;

constexpr const char* kFormatVersion = "claimrank.v1";

std::string fmt2(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", x);
    return buf;
}

std::string fmt3(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", x);
    return buf;
}

const char* to_string(ReferenceMode mode) {
    return mode == ReferenceMode::explanation ? "explanation" : "relevant-sentences";
}

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += sep;
        out += p;
    }
    return out;
}

json config_json(const RunConfig& config) {
    json c;
    c["command"] = config.command;
    c["corpus"] = config.corpus_path;
    c["embedder"] = config.embedder;
    c["methods"] = config.methods;
    c["top_k"] = config.top_k;
    c["damping"] = config.damping;
    c["tol"] = config.tol;
    c["max_iter"] = config.max_iter;
    c["seed"] = config.seed;
    c["output"] = config.output_path.empty() ? "-" : config.output_path;
    c["stemming"] = config.stemming;
    c["question"] = config.question;
    c["runs"] = config.runs;
    c["reference_mode"] = to_string(config.reference_mode);
    c["rounds"] = config.rounds;
    c["rerank_each_round"] = config.rerank_each_round;
    return c;
}

void echo_config(const RunConfig& config, std::ostream& err) {
    json echo;
    echo["format_version"] = kFormatVersion;
    echo["effective_config"] = config_json(config);
    err << echo.dump() << "\n";
}

// One-line `#` header embedding the effective config into CSV outputs.
std::string csv_header_comment(const RunConfig& config) {
    std::ostringstream os;
    os << "# " << kFormatVersion << " command=" << config.command
       << " corpus=" << config.corpus_path << " embedder=" << config.embedder
       << " methods=" << join(config.methods, ',') << " top_k=" << config.top_k
       << " damping=" << config.damping << " tol=" << config.tol
       << " max_iter=" << config.max_iter << " seed=" << config.seed
       << " stemming=" << (config.stemming ? "on" : "off")
       << " question=" << config.question << " runs=" << config.runs
       << " reference_mode=" << to_string(config.reference_mode)
       << " rounds=" << config.rounds
       << " rerank_each_round=" << (config.rerank_each_round ? "on" : "off");
    return os.str();
}

RankParams rank_params(const RunConfig& config) {
    RankParams p;
    p.damping = config.damping;
    p.tol = config.tol;
    p.max_iter = config.max_iter;
    p.top_k = config.top_k;
    return p;
}

std::uint64_t record_seed(std::uint64_t seed, const std::string& id) {
    return fnv1a64(std::to_string(seed) + ":" + id);
}

RankResult rank_record(const std::string& method, const CorpusRecord& record,
                       const EmbeddingProvider& provider, const RankParams& params,
                       std::uint64_t seed) {
    if (method == "random")
        return random_baseline(record.document.sentences, params.top_k,
                               record_seed(seed, record.id));
    const EmbeddingSet emb = provider.embed(record.document, record.bias);
    if (method == "embedding-similarity")
        return embedding_similarity_baseline(emb, record.document.sentences, params.top_k);
    const SimilarityGraph graph = build_graph(emb);
    if (method == "textrank") return textrank(graph, record.document.sentences, params);
    if (method == "biased-textrank")
        return biased_textrank(graph, bias_restart(emb), record.document.sentences, params);
    throw ConfigError("unknown method: " + method);
}

// Static-chunk fan-out across records; the first captured exception is
// rethrown after all threads join.
void parallel_records(std::size_t count, const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    std::size_t workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min({workers, count, static_cast<std::size_t>(16)});
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            const std::size_t begin = w * count / workers;
            const std::size_t end = (w + 1) * count / workers;
            try {
                for (std::size_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::vector<CorpusRecord> load_corpus(const RunConfig& config) {
    if (config.corpus_path.empty()) throw ConfigError("--corpus is required");
    return load_jsonl_corpus(config.corpus_path);
}

void require_single_method(const RunConfig& config) {
    if (config.methods.size() != 1)
        throw ConfigError("command '" + config.command + "' takes exactly one --method");
}

int cmd_explain(const RunConfig& config, std::ostream& out) {
    require_single_method(config);
    const auto records = load_corpus(config);
    const auto provider = make_provider(config, records);
    const auto params = rank_params(config);
    const std::string& method = config.methods.front();

    std::vector<std::string> lines(records.size());
    parallel_records(records.size(), [&](std::size_t i) {
        const RankResult r = rank_record(method, records[i], *provider, params, config.seed);
        json obj;
        obj["id"] = records[i].id;
        obj["method"] = method;
        obj["selected_indices"] = r.selected;
        obj["explanation_text"] = r.explanation_text;
        obj["scores"] = r.scores;
        obj["iterations"] = r.iterations_used;
        obj["converged"] = r.converged;
        lines[i] = obj.dump();
    });
    for (const auto& line : lines) out << line << "\n";
    return 0;
}

// Reference token sequence for one record under the active mode, or nullopt
// when the record does not participate.
std::optional<std::vector<std::string>> reference_tokens(const CorpusRecord& record,
                                                         const RunConfig& config) {
    // Non-satisfactory answers are kept in the corpus but never scored.
    if (record.satisfactory_label &&
        *record.satisfactory_label != SatisfactoryLabel::satisfactory)
        return std::nullopt;
    if (config.reference_mode == ReferenceMode::explanation) {
        if (!record.reference_explanation) return std::nullopt;
        return tokenize(*record.reference_explanation);
    }
    if (record.relevant_sentence_indices.empty()) return std::nullopt;
    std::vector<int> indices = record.relevant_sentence_indices;
    std::sort(indices.begin(), indices.end());
    std::string text;
    for (int idx : indices) {
        if (!text.empty()) text += ' ';
        text += record.document.sentences[static_cast<std::size_t>(idx)].text;
    }
    return tokenize(text);
}

int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (config.methods.empty()) throw ConfigError("--method is required");
    const auto records = load_corpus(config);
    const auto provider = make_provider(config, records);
    const auto params = rank_params(config);

    std::vector<std::size_t> scored;  // records that carry a usable reference
    std::vector<std::vector<std::string>> refs(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        auto ref = reference_tokens(records[i], config);
        if (!ref || ref->empty()) continue;
        refs[i] = config.stemming ? stem_tokens(*ref) : std::move(*ref);
        scored.push_back(i);
    }
    if (scored.empty())
        throw DataError(config.reference_mode == ReferenceMode::explanation
                            ? "no records carry a scorable reference explanation"
                            : "no records carry relevant sentence annotations");

    out << csv_header_comment(config) << "\n";
    out << "method,rouge1_f,rouge2_f,rougeL_f\n";
    std::ostringstream table;
    table << "method                    rouge1_f  rouge2_f  rougeL_f   (" << scored.size()
          << " pairs)\n";
    for (const std::string& method : config.methods) {
        std::vector<std::vector<std::string>> cands(scored.size());
        parallel_records(scored.size(), [&](std::size_t si) {
            const CorpusRecord& rec = records[scored[si]];
            const RankResult r = rank_record(method, rec, *provider, params, config.seed);
            auto tokens = tokenize(r.explanation_text);
            cands[si] = config.stemming ? stem_tokens(tokens) : std::move(tokens);
        });
        std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> pairs;
        pairs.reserve(scored.size());
        for (std::size_t si = 0; si < scored.size(); ++si)
            pairs.emplace_back(std::move(cands[si]), refs[scored[si]]);
        const CorpusRouge agg = corpus_rouge(pairs);
        out << method << "," << fmt2(agg.rouge1.f1 * 100.0) << ","
            << fmt2(agg.rouge2.f1 * 100.0) << "," << fmt2(agg.rougeL.f1 * 100.0) << "\n";
        char row[128];
        std::snprintf(row, sizeof(row), "%-24s  %8.2f  %8.2f  %8.2f\n", method.c_str(),
                      agg.rouge1.f1 * 100.0, agg.rouge2.f1 * 100.0, agg.rougeL.f1 * 100.0);
        table << row;
    }
    err << table.str();
    return 0;
}

int cmd_downstream(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (config.methods.empty()) throw ConfigError("--method is required");
    const auto records = load_corpus(config);
    const auto provider = make_provider(config, records);
    const auto params = rank_params(config);

    std::vector<int> questions;
    if (config.question > 0) {
        questions.push_back(config.question);
    } else {
        std::set<int> seen;
        for (const auto& rec : records)
            if (rec.question_id) seen.insert(*rec.question_id);
        questions.assign(seen.begin(), seen.end());
        if (questions.empty()) throw DataError("corpus has no question metadata");
    }

    ProtocolConfig protocol;
    protocol.runs = config.runs;

    out << csv_header_comment(config) << "\n";
    out << "method,question_id,accuracy,f1_positive,f1_negative\n";
    for (const std::string& method : config.methods) {
        const Explainer explainer = make_explainer(method, *provider, params, config.seed);
        double acc = 0.0, f1p = 0.0, f1n = 0.0;
        for (int q : questions) {
            const ClassifierReport report =
                run_downstream_protocol(records, explainer, method, q, protocol);
            out << method << "," << q << "," << fmt2(report.accuracy * 100.0) << ","
                << fmt2(report.f1_positive * 100.0) << "," << fmt2(report.f1_negative * 100.0)
                << "\n";
            acc += report.accuracy;
            f1p += report.f1_positive;
            f1n += report.f1_negative;

            json obj;
            obj["question_id"] = report.question_id;
            obj["method"] = report.method;
            obj["runs"] = report.runs;
            obj["accuracy"] = report.accuracy;
            obj["f1_positive"] = report.f1_positive;
            obj["f1_negative"] = report.f1_negative;
            json per_run = json::array();
            for (const EvalMetrics& m : report.per_run)
                per_run.push_back({{"accuracy", m.accuracy},
                                   {"f1_positive", m.f1_positive},
                                   {"f1_negative", m.f1_negative}});
            obj["per_run"] = per_run;
            err << obj.dump() << "\n";
        }
        if (questions.size() > 1) {
            const double inv = 1.0 / static_cast<double>(questions.size());
            out << method << ",all," << fmt2(acc * inv * 100.0) << ","
                << fmt2(f1p * inv * 100.0) << "," << fmt2(f1n * inv * 100.0) << "\n";
        }
    }
    return 0;
}

int cmd_prune(const RunConfig& config, std::ostream& out) {
    const auto records = load_corpus(config);
    const auto provider = make_provider(config, records);
    const auto params = rank_params(config);
    const PruneVariant variant =
        config.rerank_each_round ? PruneVariant::rerank_each_round : PruneVariant::rank_once;

    std::vector<std::string> lines(records.size());
    parallel_records(records.size(), [&](std::size_t i) {
        const CorpusRecord& rec = records[i];
        const EmbeddingSet emb = provider->embed(rec.document, rec.bias);
        const PruneResult pruned =
            prune_least_relevant(rec.document, emb, config.rounds, params, variant);
        json obj;
        obj["id"] = rec.id;
        obj["removal_order"] = pruned.removal_order;
        json rounds = json::array();
        for (std::size_t r = 0; r < pruned.rounds.size(); ++r) {
            rounds.push_back({{"removed", pruned.removal_order[r]},
                              {"sentence_count", pruned.rounds[r].sentences.size()},
                              {"remaining_text", pruned.rounds[r].raw_text}});
        }
        obj["rounds"] = rounds;
        lines[i] = obj.dump();
    });
    for (const auto& line : lines) out << line << "\n";
    return 0;
}

int cmd_bench(const RunConfig& config, std::ostream& out, std::ostream& err) {
    require_single_method(config);
    const auto records = load_corpus(config);
    if (records.empty()) throw DataError("bench needs a non-empty corpus");
    const auto provider = make_provider(config, records);
    const auto params = rank_params(config);
    const std::string& method = config.methods.front();

    // Embeddings are computed up front; the timed section is ranking only.
    std::vector<EmbeddingSet> embeddings;
    embeddings.reserve(records.size());
    for (const auto& rec : records)
        embeddings.push_back(provider->embed(rec.document, rec.bias));

    std::vector<double> millis;
    millis.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        const SimilarityGraph graph = build_graph(embeddings[i]);
        RankResult r;
        if (method == "textrank") {
            r = textrank(graph, records[i].document.sentences, params);
        } else if (method == "biased-textrank") {
            r = biased_textrank(graph, bias_restart(embeddings[i]),
                                records[i].document.sentences, params);
        } else {
            throw ConfigError("bench supports biased-textrank and textrank only");
        }
        const auto stop = std::chrono::steady_clock::now();
        if (r.explanation_text.empty() && !records[i].document.sentences.empty())
            throw DataError("empty explanation for record " + records[i].id);
        millis.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
    }

    std::vector<double> sorted = millis;
    std::sort(sorted.begin(), sorted.end());
    auto percentile = [&](double q) {
        const std::size_t rank = static_cast<std::size_t>(
            std::ceil(q * static_cast<double>(sorted.size())));
        return sorted[std::max<std::size_t>(rank, 1) - 1];
    };
    const double p50 = percentile(0.50);
    const double p95 = percentile(0.95);

    out << csv_header_comment(config) << "\n";
    out << "samples,p50_ms,p95_ms\n";
    out << sorted.size() << "," << fmt3(p50) << "," << fmt3(p95) << "\n";
    err << "ranked " << sorted.size() << " documents: p50 " << fmt3(p50) << " ms, p95 "
        << fmt3(p95) << " ms\n";
    return 0;
}

int cmd_stats(const RunConfig& config, std::ostream& out) {
    const auto records = load_corpus(config);
    const CorpusStats stats = corpus_stats(records);
    out << csv_header_comment(config) << "\n";
    out << "explanations,avg_words,avg_sentences\n";
    out << stats.total_count << "," << fmt2(stats.avg_words) << ","
        << fmt2(stats.avg_sentences) << "\n";
    return 0;
}

int cmd_adapt(const RunConfig& config, std::ostream& out) {
    if (config.corpus_path.empty()) throw ConfigError("--corpus is required");
    std::vector<CorpusRecord> records;
    if (config.adapt_format == "liarplus") {
        LiarPlusColumnMap columns;
        columns.claim = config.col_claim;
        columns.report = config.col_report;
        columns.justification = config.col_justification;
        columns.split = config.col_split;
        columns.id = config.col_id;
        try {
            columns.default_split = parse_split(config.default_split);
        } catch (const DataError& e) {
            throw ConfigError(e.what());
        }
        records = adapt_liarplus(config.corpus_path, columns);
    } else if (config.adapt_format == "health-reviews") {
        records = adapt_health_reviews(config.corpus_path, config.seed);
    } else {
        throw ConfigError("unknown adapt format: '" + config.adapt_format +
                          "' (expected liarplus or health-reviews)");
    }
    for (const auto& rec : records) out << to_jsonl_line(rec) << "\n";
    return 0;
}

}  // namespace

Explainer make_explainer(const std::string& method, const EmbeddingProvider& provider,
                         const RankParams& params, std::uint64_t seed) {
    if (method != "biased-textrank" && method != "textrank" &&
        method != "embedding-similarity" && method != "random")
        throw ConfigError("unknown method: " + method);
    return [method, &provider, params, seed](const CorpusRecord& record) {
        return rank_record(method, record, provider, params, seed).explanation_text;
    };
}

std::unique_ptr<EmbeddingProvider> make_provider(const RunConfig& config,
                                                 const std::vector<CorpusRecord>& records) {
    if (config.embedder == "tfidf") {
        std::vector<Document> documents;
        documents.reserve(records.size());
        for (const auto& rec : records) documents.push_back(rec.document);
        return std::make_unique<TfidfEmbedder>(fit_tfidf(documents));
    }
    if (config.embedder.rfind("file:", 0) == 0) {
        const std::string path = config.embedder.substr(5);
        if (path.empty()) throw ConfigError("embedder file path is empty");
        return std::make_unique<FileEmbedder>(path);
    }
    throw ConfigError("unknown embedder: '" + config.embedder +
                      "' (expected tfidf or file:<path>)");
}

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        std::ofstream file_out;
        std::ostream* sink = &out;
        if (!config.output_path.empty()) {
            file_out.open(config.output_path, std::ios::binary);
            if (!file_out)
                throw DataError("cannot open output file: " + config.output_path);
            sink = &file_out;
        }
        echo_config(config, err);
        if (config.command == "explain") return cmd_explain(config, *sink);
        if (config.command == "evaluate") return cmd_evaluate(config, *sink, err);
        if (config.command == "downstream") return cmd_downstream(config, *sink, err);
        if (config.command == "prune") return cmd_prune(config, *sink);
        if (config.command == "bench") return cmd_bench(config, *sink, err);
        if (config.command == "stats") return cmd_stats(config, *sink);
        if (config.command == "adapt") return cmd_adapt(config, *sink);
        throw ConfigError("unknown command: '" + config.command + "'");
    } catch (const ConfigError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DataError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace claimrank
