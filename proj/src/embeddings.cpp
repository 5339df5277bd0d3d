#include "claimrank/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "claimrank/errors.hpp"

namespace claimrank {

TfidfModel fit_tfidf(const std::vector<Document>& documents) {
    TfidfModel model;
    model.corpus_size = documents.size();

    std::map<std::string, int> df;
    for (const Document& doc : documents) {
        std::set<std::string> seen;
        for (const Sentence& s : doc.sentences)
            seen.insert(s.tokens.begin(), s.tokens.end());
        for (const std::string& t : seen) ++df[t];
    }
    if (df.empty()) throw DataError("empty vocabulary");

    int column = 0;
    model.document_frequencies.reserve(df.size());
    for (const auto& [token, count] : df) {
        model.vocabulary.emplace(token, column++);
        model.document_frequencies.push_back(count);
    }
    return model;
}

std::vector<double> embed_tfidf(const TfidfModel& model, const std::vector<std::string>& tokens) {
    std::vector<double> vec(model.vocabulary.size(), 0.0);
    for (const std::string& t : tokens) {
        const auto it = model.vocabulary.find(t);
        if (it == model.vocabulary.end()) continue;
        vec[it->second] += 1.0;
    }
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < vec.size(); ++i) {
        if (vec[i] == 0.0) continue;
        const double idf =
            std::log((static_cast<double>(model.corpus_size) + 1.0) /
                     (static_cast<double>(model.document_frequencies[i]) + 1.0)) +
            1.0;
        vec[i] *= idf;
        norm_sq += vec[i] * vec[i];
    }
    if (norm_sq > 0.0) {
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (double& x : vec) x *= inv;
    }
    return vec;
}

EmbeddingSet load_embeddings(const std::filesystem::path& path, const Document& document,
                             const BiasQuery& bias) {
    (void)bias;
    std::ifstream in(path);
    if (!in) throw DataError("cannot open embedding file: " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw DataError(path.string() + ": empty embedding file");
    std::istringstream header(line);
    std::string tag;
    long long dim = 0;
    if (!(header >> tag >> dim) || tag != "dim" || dim <= 0)
        throw DataError(path.string() + ": first line must be \"dim <D>\"");

    std::unordered_map<std::string, std::vector<double>> vectors;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": expected \"<id>\\t<floats>\"");
        const std::string id = line.substr(0, tab);
        std::istringstream values(line.substr(tab + 1));
        std::vector<double> vec;
        vec.reserve(static_cast<std::size_t>(dim));
        double x = 0.0;
        while (values >> x) {
            if (!std::isfinite(x))
                throw DataError(path.string() + ":" + std::to_string(line_no) +
                                ": non-finite value in vector \"" + id + "\"");
            vec.push_back(x);
        }
        if (!values.eof())
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": malformed float in vector \"" + id + "\"");
        if (vec.size() != static_cast<std::size_t>(dim))
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": vector \"" + id +
                            "\" has " + std::to_string(vec.size()) + " components, expected " +
                            std::to_string(dim));
        vectors[id] = std::move(vec);
    }

    EmbeddingSet set;
    set.dimension = static_cast<std::size_t>(dim);
    set.sentence_vectors.reserve(document.sentences.size());
    for (const Sentence& s : document.sentences) {
        const std::string id = std::to_string(s.index);
        const auto it = vectors.find(id);
        if (it == vectors.end()) throw DataError(path.string() + ": missing vector: " + id);
        set.sentence_vectors.push_back(it->second);
    }
    const auto it = vectors.find("bias");
    if (it == vectors.end()) throw DataError(path.string() + ": missing vector: bias");
    set.bias_vector = it->second;
    return set;
}

double cosine_similarity(const std::vector<double>& u, const std::vector<double>& v) {
    if (u.size() != v.size())
        throw std::invalid_argument("cosine_similarity: dimension mismatch (" +
                                    std::to_string(u.size()) + " vs " + std::to_string(v.size()) +
                                    ")");
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * v[i];
        nu += u[i] * u[i];
        nv += v[i] * v[i];
    }
    if (nu == 0.0 || nv == 0.0) return 0.0;
    return std::clamp(dot / (std::sqrt(nu) * std::sqrt(nv)), -1.0, 1.0);
}

EmbeddingSet TfidfEmbedder::embed(const Document& document, const BiasQuery& bias) const {
    EmbeddingSet set;
    set.dimension = model_.vocabulary.size();
    set.sentence_vectors.reserve(document.sentences.size());
    for (const Sentence& s : document.sentences)
        set.sentence_vectors.push_back(embed_tfidf(model_, s.tokens));
    set.bias_vector = embed_tfidf(model_, bias.tokens);
    return set;
}

EmbeddingSet FileEmbedder::embed(const Document& document, const BiasQuery& bias) const {
    std::filesystem::path file = path_;
    if (std::filesystem::is_directory(path_)) file = path_ / (document.id + ".emb");
    return load_embeddings(file, document, bias);
}

EmbeddingSet subset(const EmbeddingSet& embeddings, const std::vector<int>& positions) {
    EmbeddingSet out;
    out.dimension = embeddings.dimension;
    out.bias_vector = embeddings.bias_vector;
    out.sentence_vectors.reserve(positions.size());
    for (int p : positions)
        out.sentence_vectors.push_back(embeddings.sentence_vectors.at(static_cast<std::size_t>(p)));
    return out;
}

}  // namespace claimrank
