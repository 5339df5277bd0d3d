#ifndef CLAIMRANK_EMBEDDINGS_HPP
#define CLAIMRANK_EMBEDDINGS_HPP

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "claimrank/corpus.hpp"

namespace claimrank {

// Dense vectors for one document's sentences plus its bias query, all of a
// single fixed dimension.
struct EmbeddingSet {
    std::size_t dimension = 0;
    std::vector<std::vector<double>> sentence_vectors;
    std::vector<double> bias_vector;
};

// Deterministic TF-IDF vectorizer over a fitted corpus. Column indices are
// assigned in lexicographic token order.
struct TfidfModel {
    std::map<std::string, int> vocabulary;
    std::vector<int> document_frequencies;  // indexed by vocabulary column
    std::size_t corpus_size = 0;
};

// Builds the vocabulary and document frequencies from the documents' token
// sets. Throws DataError("empty vocabulary") when no document has a token.
TfidfModel fit_tfidf(const std::vector<Document>& documents);

// Component for token t: tf(t) * (ln((corpus_size + 1)/(df(t) + 1)) + 1).
// Out-of-vocabulary tokens are ignored. L2-normalized; all-zero input stays
// the zero vector.
std::vector<double> embed_tfidf(const TfidfModel& model, const std::vector<std::string>& tokens);

// Reads the embedding text format: first line "dim <D>", then one
// "<id>\t<f1> <f2> ... <fD>" line per vector. Sentence ids are the 0-based
// sentence indices as strings; the bias vector uses id "bias". Missing ids,
// dimension mismatches and non-finite values raise DataError.
EmbeddingSet load_embeddings(const std::filesystem::path& path, const Document& document,
                             const BiasQuery& bias);

// u.v / (|u||v|), clamped to [-1, 1]; 0 when either norm is 0. Throws
// std::invalid_argument on dimension mismatch.
double cosine_similarity(const std::vector<double>& u, const std::vector<double>& v);

// Pluggable embedding source: either the built-in TF-IDF model or vectors
// precomputed by an external tool.
class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual EmbeddingSet embed(const Document& document, const BiasQuery& bias) const = 0;
};

class TfidfEmbedder : public EmbeddingProvider {
public:
    explicit TfidfEmbedder(TfidfModel model) : model_(std::move(model)) {}
    EmbeddingSet embed(const Document& document, const BiasQuery& bias) const override;
    const TfidfModel& model() const { return model_; }

private:
    TfidfModel model_;
};

// Reads vectors from <dir>/<document id>.emb when constructed with a
// directory, or from the single file otherwise (single-document corpora).
class FileEmbedder : public EmbeddingProvider {
public:
    explicit FileEmbedder(std::filesystem::path path) : path_(std::move(path)) {}
    EmbeddingSet embed(const Document& document, const BiasQuery& bias) const override;

private:
    std::filesystem::path path_;
};

// Restricts an EmbeddingSet to the given sentence positions (bias kept).
EmbeddingSet subset(const EmbeddingSet& embeddings, const std::vector<int>& positions);

}  // namespace claimrank

#endif  // CLAIMRANK_EMBEDDINGS_HPP
