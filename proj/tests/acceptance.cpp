// End-to-end acceptance checks. Each check prints one PASS/FAIL line and the
// binary exits nonzero if any of them fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "claimrank/cli.hpp"
#include "claimrank/corpus.hpp"
#include "claimrank/downstream.hpp"
#include "claimrank/embeddings.hpp"
#include "claimrank/ranking.hpp"
#include "claimrank/rouge.hpp"
#include "oracles.hpp"

using namespace claimrank;
using testsupport::TempDir;
using testsupport::write_file;

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(const char* pattern, ...) {
    char buffer[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buffer, sizeof buffer, pattern, args);
    va_end(args);
    return buffer;
}

std::vector<std::string> reference_from_relevant(const CorpusRecord& rec) {
    std::string joined;
    for (int idx : rec.relevant_sentence_indices) {
        if (!joined.empty()) joined += ' ';
        joined += rec.document.sentences[static_cast<std::size_t>(idx)].text;
    }
    return tokenize(joined);
}

CorpusRouge score_method(const std::vector<CorpusRecord>& records, const Explainer& explain,
                         bool use_relevant) {
    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> pairs;
    for (const auto& rec : records) {
        pairs.emplace_back(tokenize(explain(rec)),
                           use_relevant ? reference_from_relevant(rec)
                                        : tokenize(*rec.reference_explanation));
    }
    return corpus_rouge(pairs);
}

bool check_power_iteration_oracle(std::string& detail) {
    std::mt19937_64 rng(1001);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng() % 8;
        const SimilarityGraph g = testsupport::random_graph(rng, n);
        RestartDistribution restart;
        restart.probabilities = testsupport::random_restart(rng, n);
        const auto fast = power_iteration(g, restart, 0.85, 1e-12, 2000);
        const auto slow = testsupport::oracle_stationary(g.transition, restart.probabilities, 0.85);
        for (std::size_t i = 0; i < n; ++i)
            worst = std::max(worst, std::abs(fast.scores[i] - slow[i]));
    }
    detail = fmt("max component error %.3g over 100 graphs", worst);
    return worst < 1e-6;
}

bool check_uniform_restart_reduction(std::string& detail) {
    std::mt19937_64 rng(1002);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng() % 9;
        const std::size_t dim = 3 + rng() % 6;
        EmbeddingSet set;
        set.dimension = dim;
        set.sentence_vectors.resize(n);
        for (auto& v : set.sentence_vectors) {
            v.resize(dim);
            for (auto& x : v) x = testsupport::uniform01(rng) * 2.0 - 1.0;
        }
        set.bias_vector.assign(dim, 1.0);

        std::vector<Sentence> sentences(n);
        for (std::size_t i = 0; i < n; ++i) {
            sentences[i].index = static_cast<int>(i);
            sentences[i].text = "s" + std::to_string(i) + ".";
        }
        const SimilarityGraph g = build_graph(set);
        const RankParams params{0.85, 1e-10, 500, 3};
        const auto plain = textrank(g, sentences, params);
        const auto biased = biased_textrank(g, RestartDistribution::uniform(n), sentences, params);
        for (std::size_t i = 0; i < n; ++i)
            worst = std::max(worst, std::abs(plain.scores[i] - biased.scores[i]));
    }
    detail = fmt("max score difference %.3g over 50 documents", worst);
    return worst <= 1e-9;
}

bool check_rouge_oracles(std::string& detail) {
    std::mt19937_64 rng(1003);
    int mismatches = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const auto cand = testsupport::random_tokens(rng, 10);
        const auto ref = testsupport::random_tokens(rng, 10);
        for (int n = 1; n <= 2; ++n) {
            const RougeScore fast = rouge_n(cand, ref, n);
            const RougeScore slow = testsupport::oracle_rouge_n(cand, ref, n);
            if (fast.precision != slow.precision || fast.recall != slow.recall ||
                fast.f1 != slow.f1)
                ++mismatches;
        }
        const RougeScore fast = rouge_l(cand, ref);
        const RougeScore slow = testsupport::oracle_rouge_l(cand, ref);
        if (fast.precision != slow.precision || fast.recall != slow.recall || fast.f1 != slow.f1)
            ++mismatches;
    }
    detail = fmt("%d mismatches across 500 token pairs", mismatches);
    return mismatches == 0;
}

bool check_biased_beats_unbiased(std::string& detail) {
    const auto records = testsupport::planted_relevance_corpus(200);
    std::vector<Document> docs;
    for (const auto& rec : records) docs.push_back(rec.document);
    const TfidfEmbedder embedder(fit_tfidf(docs));
    const RankParams params{};

    const Explainer biased = make_explainer("biased-textrank", embedder, params, 42);
    const Explainer plain = make_explainer("textrank", embedder, params, 42);
    const CorpusRouge with_bias = score_method(records, biased, false);
    const CorpusRouge without = score_method(records, plain, false);

    const double d1 = (with_bias.rouge1.f1 - without.rouge1.f1) * 100.0;
    const double d2 = (with_bias.rouge2.f1 - without.rouge2.f1) * 100.0;
    const double dl = (with_bias.rougeL.f1 - without.rougeL.f1) * 100.0;
    detail = fmt("gains r1 %.2f, r2 %.2f, rL %.2f points", d1, d2, dl);
    return d1 >= 2.0 && d2 >= 2.0 && dl >= 2.0;
}

bool check_biased_matches_similarity(std::string& detail) {
    const auto records = testsupport::planted_relevance_corpus(200);
    std::vector<Document> docs;
    for (const auto& rec : records) docs.push_back(rec.document);
    const TfidfEmbedder embedder(fit_tfidf(docs));
    const RankParams params{};

    const Explainer biased = make_explainer("biased-textrank", embedder, params, 42);
    const Explainer similarity = make_explainer("embedding-similarity", embedder, params, 42);
    const double ours = score_method(records, biased, true).rouge1.f1 * 100.0;
    const double baseline = score_method(records, similarity, true).rouge1.f1 * 100.0;
    detail = fmt("rouge-1 f %.2f vs baseline %.2f", ours, baseline);
    return ours >= baseline - 0.5;
}

bool check_downstream_protocol(std::string& detail) {
    const auto records = testsupport::labeled_signal_corpus(200);
    std::vector<Document> docs;
    for (const auto& rec : records) docs.push_back(rec.document);
    const TfidfEmbedder embedder(fit_tfidf(docs));
    const RankParams params{0.85, 1e-6, 100, 2};

    ProtocolConfig config;
    config.runs = 10;
    const ClassifierReport ours = run_downstream_protocol(
        records, make_explainer("biased-textrank", embedder, params, 42), "biased-textrank", 1,
        config);
    const ClassifierReport random_pick = run_downstream_protocol(
        records, make_explainer("random", embedder, params, 42), "random", 1, config);

    std::vector<double> ours_acc;
    std::vector<double> random_acc;
    for (const auto& run : ours.per_run) ours_acc.push_back(run.accuracy);
    for (const auto& run : random_pick.per_run) random_acc.push_back(run.accuracy);
    const WelchResult welch = welch_t_test(ours_acc, random_acc);

    detail = fmt("mean accuracy %.3f vs random %.3f, welch p %.3g%s", ours.accuracy,
                 random_pick.accuracy, welch.p, welch.degenerate ? " (degenerate)" : "");
    return ours.accuracy >= 0.9 && welch.p < 0.05;
}

bool check_latency(std::string& detail) {
    TempDir dir;
    const int sentences = 100;
    const int dim = 384;
    const int copies = 9;

    std::string article;
    for (int i = 0; i < sentences; ++i)
        article += "Sentence " + std::to_string(i) + " covers subject matter. ";
    std::string corpus;
    for (int c = 0; c < copies; ++c) {
        corpus += to_jsonl_line([&] {
            CorpusRecord rec;
            rec.id = "bench-" + std::to_string(c);
            rec.document = make_document(rec.id, article);
            rec.bias = make_bias_query("subject matter");
            rec.split = Split::train;
            return rec;
        }()) + "\n";
    }
    const std::string corpus_path = write_file(dir.path(), "bench.jsonl", corpus);

    std::mt19937_64 rng(1007);
    std::ostringstream emb;
    emb << "dim " << dim << "\n";
    auto vec_line = [&](const std::string& id) {
        emb << id << "\t";
        for (int d = 0; d < dim; ++d)
            emb << (d ? " " : "") << testsupport::uniform01(rng) * 2.0 - 1.0;
        emb << "\n";
    };
    for (int i = 0; i < sentences; ++i) vec_line(std::to_string(i));
    vec_line("bias");
    const std::string emb_path = write_file(dir.path(), "bench.emb", emb.str());

    RunConfig config;
    config.command = "bench";
    config.corpus_path = corpus_path;
    config.embedder = "file:" + emb_path;
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_command(config, out, err);
    if (code != 0) {
        detail = fmt("bench exited with %d", code);
        return false;
    }
    std::istringstream csv(out.str());
    std::string line;
    std::string data;
    while (std::getline(csv, line))
        if (!line.empty() && line[0] != '#' && line.rfind("samples", 0) != 0) data = line;
    double p50 = -1.0;
    double p95 = -1.0;
    int samples = 0;
    if (std::sscanf(data.c_str(), "%d,%lf,%lf", &samples, &p50, &p95) != 3) {
        detail = "could not parse bench csv: " + data;
        return false;
    }
    detail = fmt("p50 %.2fms, p95 %.2fms over %d runs of a %d-sentence article", p50, p95,
                 samples, sentences);
    return samples == copies && p50 >= 0.0 && p50 < 50.0;
}

bool check_determinism(std::string& detail) {
    const char* cli = std::getenv("CLAIMRANK_CLI");
    if (cli == nullptr) {
        detail = "CLAIMRANK_CLI is not set";
        return false;
    }
    TempDir dir;
    const auto records = testsupport::planted_relevance_corpus(30);
    std::string body;
    for (const auto& rec : records) body += to_jsonl_line(rec) + "\n";
    const std::string corpus = write_file(dir.path(), "corpus.jsonl", body);

    auto run_once = [&](const std::string& out_path) {
        const std::string command = std::string(cli) + " evaluate --corpus " + corpus +
                                    " --method biased-textrank --method textrank" +
                                    " --method random --seed 7 --top-k 3 --out " + out_path +
                                    " > /dev/null 2> /dev/null";
        const int rc = std::system(command.c_str());
        return rc != -1 && WIFEXITED(rc) && WEXITSTATUS(rc) == 0;
    };
    const std::string first = (dir.path() / "run1.csv").string();
    const std::string second = (dir.path() / "run2.csv").string();
    if (!run_once(first) || !run_once(second)) {
        detail = "evaluate run failed";
        return false;
    }
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    };
    const std::string a = slurp(first);
    const std::string b = slurp(second);
    detail = fmt("%zu bytes per report", a.size());
    return !a.empty() && a == b;
}

bool check_welch_reference_values(std::string& detail) {
    struct Golden {
        std::vector<double> a;
        std::vector<double> b;
        double p;
    };
    const std::vector<Golden> goldens = {
        {{10.1, 10.2, 9.9, 10.0}, {8.1, 8.0, 7.9, 8.2}, 0.0000005908},
        {{1, 2, 3, 4, 5}, {1, 2, 3, 4, 5}, 1.0000000000},
        {{2.6562, 1.0951, 2.194, 3.3965}, {3.9599, 4.7966, 2.5816, 4.0767}, 0.0635084233},
        {{-1.9468, -3.1998, -6.3584, -5.2385, -2.7428, -3.1217, -4.753, -5.4969},
         {-5.1512, -3.8722, -4.2821, -3.1035, -4.1093, -2.1367, -3.4589, -3.4878},
         0.5343724226},
        {{-1.9019, -6.0882, -2.9319, -2.9195, -6.3195, -7.9069, -4.5081},
         {-8.5408, -9.721, -3.0619, -0.9949, -9.6832, -4.3453, -12.276},
         0.2284080111},
        {{0.0517, -0.7561, -0.6474, -0.38, -1.6111, 0.4386, -2.724},
         {-3.2732, -1.1101, -4.1346, -2.037},
         0.0628616698},
        {{2.8566, 4.6697, -0.3861},
         {-0.6477, 0.003, -3.5997, 1.7937, 2.4819, -0.9376, 1.9035, -3.0163, 5.8179, -1.978},
         0.2794677057},
        {{5.657, 2.9804, 7.4584, 2.9024, 4.2482, 6.1304, 3.6919, 4.959, 2.0247},
         {6.1452, 5.4656, 4.9204, 5.5764, 6.8426},
         0.0697686761},
        {{1.5378, -1.1726, 2.4316},
         {0.539, 1.3988, 0.9495, 0.4122, 2.0818, 0.559, 1.7351},
         0.8949212272},
        {{1.9844, 5.2604, 2.5629, 2.4263}, {4.4862, 4.3783, 5.3339, 0.8621}, 0.5908156132},
        {{2.829, 2.8395, 2.1202, 1.2247, 0.9302, -0.8395},
         {0.0318, 0.3614, -0.7531, 0.6999},
         0.0620443096},
        {{2.1521, 0.3169, 0.8476}, {3.2725, 3.1588, 3.1956, 2.6132}, 0.0605795460},
        {{0.4874, 0.1226, -3.7866, 0.3418, -0.3484, 0.2395},
         {-1.4253, -2.6449, -1.1947, -0.0122, -1.405, -1.6954, -0.3128, -0.8878, -0.3552,
          -0.2473},
         0.4878837215},
        {{-3.0111, -2.416, -5.2279, -3.852, -7.3581, -3.9746, -6.1597, -9.5454, -6.0184},
         {-5.8562, -5.9111, -5.4347, -4.9356, -6.4762, -6.6221},
         0.4780485715},
        {{-2.1715, -1.6587, -4.0376, -2.8038, -4.7224, -2.1922, -3.4873},
         {-2.7738, -4.4681, -4.4244, -4.4003, -5.1724, -3.8262, -3.3016, -4.3715, -2.9456},
         0.0836541964},
        {{5.0549, 3.858, 3.9483, 4.4906, 3.798, 4.2869, 4.2251},
         {5.5518, 6.3876, 3.3107},
         0.4553133638},
        {{1.7706, -5.0852, -2.5196, -3.3394, -0.1106, -9.1647},
         {-2.8344, -2.6756, -2.2157, -3.0063},
         0.8134799689},
        {{-2.1391, -0.8803, 1.5322, 1.3415, 0.9431, 0.6195, 2.8325, 0.2466, -0.0396},
         {0.0302, -1.5236, 1.1775, 3.5509, 2.0812},
         0.5854624952},
        {{-4.7365, -3.8497, -2.0525, -4.7704, -2.2832, -2.2775, -3.4527, -3.8533},
         {-3.4611, -2.3211, -4.2001, -4.0111},
         0.8807095753},
        {{2.8691, 3.0743, 3.4697, 3.6045, 4.3277, 3.4662, 3.3405, 2.9999, 3.2096, 3.6659},
         {2.6621, 6.1088, 3.3661},
         0.6040606024},
    };
    double worst = 0.0;
    for (const auto& g : goldens)
        worst = std::max(worst, std::abs(welch_t_test(g.a, g.b).p - g.p));
    detail = fmt("max p deviation %.3g across %zu pairs", worst, goldens.size());
    return worst < 1e-3;
}

struct Criterion {
    int number;
    const char* description;
    bool (*body)(std::string&);
    double budget_seconds;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "power iteration matches a dense linear solve on random graphs",
         check_power_iteration_oracle, 5.0},
        {2, "uniform-restart ranking coincides with the unbiased ranking",
         check_uniform_restart_reduction, 5.0},
        {3, "rouge scores agree exactly with brute-force counting", check_rouge_oracles, 10.0},
        {4, "query-biased ranking beats unbiased ranking by 2+ rouge points",
         check_biased_beats_unbiased, 60.0},
        {5, "query-biased ranking keeps pace with the similarity baseline",
         check_biased_matches_similarity, 60.0},
        {6, "downstream classifier hits 0.9 accuracy and beats random selection",
         check_downstream_protocol, 120.0},
        {7, "median ranking latency for a 100-sentence article stays under 50ms",
         check_latency, 120.0},
        {8, "identical configurations produce byte-identical evaluation reports",
         check_determinism, 120.0},
        {9, "welch t-test p-values match reference statistics", check_welch_reference_values,
         5.0},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        std::string detail;
        bool ok = false;
        const auto start = Clock::now();
        try {
            ok = criterion.body(detail);
        } catch (const std::exception& e) {
            detail = fmt("threw: %s", e.what());
            ok = false;
        }
        const double elapsed =
            std::chrono::duration<double>(Clock::now() - start).count();
        if (elapsed > criterion.budget_seconds) {
            ok = false;
            detail += fmt("; exceeded %.0fs budget", criterion.budget_seconds);
        }
        std::printf("[%s] %d. %s (%s; %.2fs)\n", ok ? "PASS" : "FAIL", criterion.number,
                    criterion.description, detail.c_str(), elapsed);
        if (!ok) ++failures;
    }
    if (failures > 0) std::printf("%d of %zu checks failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
