#ifndef CLAIMRANK_CORPUS_HPP
#define CLAIMRANK_CORPUS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace claimrank {

// A sentence of a document. `text` is a verbatim substring of the parent
// document's raw text, trimmed of surrounding whitespace; `offset` is its
// byte offset within that raw text, so the original document can be
// reconstructed exactly from its sentences plus the whitespace gaps.
struct Sentence {
    int index = 0;
    std::string text;
    std::vector<std::string> tokens;
    std::size_t offset = 0;

    bool operator==(const Sentence&) const = default;
};

struct Document {
    std::string id;
    std::string raw_text;
    std::vector<Sentence> sentences;
};

// The claim or evaluative question that steers extraction.
struct BiasQuery {
    std::string text;
    std::vector<std::string> tokens;
};

enum class Split { train, validation, test };

enum class SatisfactoryLabel { satisfactory, unsatisfactory, not_applicable };

// One unit of work for the pipeline: an article, the query that biases the
// ranking, and (when available) the reference explanation and per-question
// metadata of the health-review family.
struct CorpusRecord {
    std::string id;
    Document document;
    BiasQuery bias;
    std::optional<std::string> reference_explanation;
    std::optional<int> question_id;  // 1..9, health-review family only
    std::optional<SatisfactoryLabel> satisfactory_label;
    std::vector<int> relevant_sentence_indices;  // optional annotation; empty when absent
    Split split = Split::train;
};

// Lowercases and splits on maximal runs of non-alphanumeric characters.
// Bytes >= 0x80 are treated as word characters and passed through, so UTF-8
// words survive intact; only ASCII A-Z is case-folded. Never yields empty
// tokens.
std::vector<std::string> tokenize(std::string_view text);

// Rule-based splitter: a sentence ends at '.', '!' or '?' (optionally
// followed by closing quotes/brackets) when the next non-space character is
// an uppercase letter, a digit or an opening quote/bracket. A fixed
// abbreviation list (dr, mr, mrs, ms, prof, st, vs, etc, e.g, i.e, u.s, jr,
// sr, no) and single uppercase initials ("F.") suppress splitting after '.'.
// Deterministic; empty input yields an empty sequence. Returned sentences
// carry their tokens and byte offsets.
std::vector<Sentence> segment_sentences(const std::string& raw_text);

// Segments and tokenizes raw_text into a Document.
Document make_document(std::string id, std::string raw_text);

// Builds a Document directly from already-segmented sentences (used by the
// pruning procedure). Sentence texts are joined with single spaces and
// re-indexed; token sequences are preserved.
Document document_from_sentences(std::string id, const std::vector<Sentence>& kept);

// Throws DataError if text is empty.
BiasQuery make_bias_query(std::string text);

const char* to_string(Split s);
const char* to_string(SatisfactoryLabel l);
Split parse_split(std::string_view s);                       // accepts "val" as alias
SatisfactoryLabel parse_satisfactory_label(std::string_view s);

// FNV-1a 64-bit; used for reproducible id-keyed decisions.
std::uint64_t fnv1a64(std::string_view s);

// Deterministic 20% test / 80% train assignment keyed on (seed, id).
Split hash_split(std::string_view id, std::uint64_t seed);

// Canonical corpus JSONL, one object per line. Required keys: "id",
// "article_text", "bias_query", "split"; optional: "reference_explanation",
// "question_id" (1-9), "satisfactory_label", "relevant_sentence_indices".
// Malformed lines and duplicate ids raise DataError naming the line.
std::vector<CorpusRecord> load_jsonl_corpus(const std::filesystem::path& path);

// Serializes a record back into one canonical JSONL line (no newline).
std::string to_jsonl_line(const CorpusRecord& record);

// Column map for the tab-separated fact-check dataset. Indices are 0-based;
// split == -1 applies default_split to every row, id == -1 synthesizes
// "<split>-row<N>" ids from 1-based data row numbers.
struct LiarPlusColumnMap {
    int claim = -1;
    int report = -1;
    int justification = -1;
    int split = -1;
    int id = -1;
    Split default_split = Split::train;
};

// Adapts a TSV of fact-check reports into canonical records with
// bias = claim, document = report, reference = justification.
std::vector<CorpusRecord> adapt_liarplus(const std::filesystem::path& path,
                                         const LiarPlusColumnMap& columns);

// Adapts a directory of health-review JSON files (one review per file, keys
// "id", "article_text", "questions": [{"question_id", "question_text",
// "explanation", "label"}]) into canonical records, one per question,
// excluding question #10. Reviews without article text are skipped with a
// warning on stderr. Splits are assigned via hash_split(record id, seed).
std::vector<CorpusRecord> adapt_health_reviews(const std::filesystem::path& dir,
                                               std::uint64_t split_seed = 42);

struct CorpusStats {
    std::size_t total_count = 0;
    double avg_words = 0.0;
    double avg_sentences = 0.0;
};

// Aggregates reference explanations: total count, mean tokens per
// explanation (per tokenize), mean sentences per explanation (per
// segment_sentences). Throws DataError when no record carries a reference.
CorpusStats corpus_stats(const std::vector<CorpusRecord>& records);

}  // namespace claimrank

#endif  // CLAIMRANK_CORPUS_HPP
