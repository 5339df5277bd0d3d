#include "claimrank/corpus.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_set>

#include "claimrank/errors.hpp"

#include "json.hpp"

namespace claimrank {

namespace {

bool is_space(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }
bool is_upper(unsigned char c) { return c >= 'A' && c <= 'Z'; }
bool is_alpha(unsigned char c) { return (c >= 'a' && c <= 'z') || is_upper(c); }
bool is_alnum(unsigned char c) { return is_alpha(c) || is_digit(c); }

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }
bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }
bool is_opener(char c) { return c == '"' || c == '\'' || c == '(' || c == '['; }

const std::unordered_set<std::string>& abbreviations() {
    static const std::unordered_set<std::string> abbrevs = {
        "dr", "mr", "mrs", "ms", "prof", "st", "vs", "etc",
        "e.g", "i.e", "u.s", "jr", "sr", "no",
    };
    return abbrevs;
}

// Word immediately before position `dot`, scanning back over alphanumerics
// and interior periods ("U.S." yields "u.s"), lowercased.
std::string word_before(const std::string& text, std::size_t dot) {
    std::size_t j = dot;
    while (j > 0) {
        unsigned char c = text[j - 1];
        if (is_alnum(c) || c == '.') {
            --j;
        } else {
            break;
        }
    }
    std::string word = text.substr(j, dot - j);
    for (char& c : word) {
        if (is_upper(static_cast<unsigned char>(c))) c = static_cast<char>(c + 32);
    }
    return word;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char c : text) {
        if (is_alnum(c) || c >= 0x80) {
            current += static_cast<char>(is_upper(c) ? c + 32 : c);
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::vector<Sentence> segment_sentences(const std::string& raw_text) {
    std::vector<Sentence> sentences;
    const std::size_t n = raw_text.size();

    auto emit = [&](std::size_t begin, std::size_t end) {
        Sentence s;
        s.index = static_cast<int>(sentences.size());
        s.offset = begin;
        s.text = raw_text.substr(begin, end - begin);
        s.tokens = tokenize(s.text);
        sentences.push_back(std::move(s));
    };

    std::size_t start = 0;
    while (start < n && is_space(raw_text[start])) ++start;
    if (start == n) return sentences;

    std::size_t pos = start;
    while (pos < n) {
        if (!is_terminator(raw_text[pos])) {
            ++pos;
            continue;
        }
        // Sentence candidate ends after the terminator plus any closers.
        std::size_t end = pos + 1;
        while (end < n && is_closer(raw_text[end])) ++end;

        bool split = false;
        if (end < n && is_space(raw_text[end])) {
            std::size_t next = end;
            while (next < n && is_space(raw_text[next])) ++next;
            if (next < n) {
                unsigned char c = raw_text[next];
                split = is_upper(c) || is_digit(c) || is_opener(c);
            }
        }
        if (split && raw_text[pos] == '.') {
            const std::string word = word_before(raw_text, pos);
            if (abbreviations().count(word) > 0) {
                split = false;
            } else if (word.size() == 1 && is_upper(raw_text[pos - 1])) {
                split = false;  // personal initial, "John F. Kennedy"
            }
        }
        if (split) {
            emit(start, end);
            pos = end;
            while (pos < n && is_space(raw_text[pos])) ++pos;
            start = pos;
        } else {
            pos = end;
        }
    }
    if (start < n) {
        std::size_t end = n;
        while (end > start && is_space(raw_text[end - 1])) --end;
        if (end > start) emit(start, end);
    }
    return sentences;
}

Document make_document(std::string id, std::string raw_text) {
    Document doc;
    doc.id = std::move(id);
    doc.raw_text = std::move(raw_text);
    doc.sentences = segment_sentences(doc.raw_text);
    return doc;
}

Document document_from_sentences(std::string id, const std::vector<Sentence>& kept) {
    Document doc;
    doc.id = std::move(id);
    for (const Sentence& s : kept) {
        Sentence copy = s;
        copy.index = static_cast<int>(doc.sentences.size());
        if (!doc.raw_text.empty()) doc.raw_text += ' ';
        copy.offset = doc.raw_text.size();
        doc.raw_text += copy.text;
        doc.sentences.push_back(std::move(copy));
    }
    return doc;
}

BiasQuery make_bias_query(std::string text) {
    if (text.empty()) throw DataError("bias query must be non-empty");
    BiasQuery q;
    q.text = std::move(text);
    q.tokens = tokenize(q.text);
    return q;
}

const char* to_string(Split s) {
    switch (s) {
        case Split::train: return "train";
        case Split::validation: return "validation";
        case Split::test: return "test";
    }
    return "train";
}

const char* to_string(SatisfactoryLabel l) {
    switch (l) {
        case SatisfactoryLabel::satisfactory: return "satisfactory";
        case SatisfactoryLabel::unsatisfactory: return "unsatisfactory";
        case SatisfactoryLabel::not_applicable: return "not_applicable";
    }
    return "satisfactory";
}

Split parse_split(std::string_view s) {
    if (s == "train") return Split::train;
    if (s == "validation" || s == "val") return Split::validation;
    if (s == "test") return Split::test;
    throw DataError("invalid split value: '" + std::string(s) + "'");
}

SatisfactoryLabel parse_satisfactory_label(std::string_view s) {
    if (s == "satisfactory") return SatisfactoryLabel::satisfactory;
    if (s == "unsatisfactory") return SatisfactoryLabel::unsatisfactory;
    if (s == "not_applicable") return SatisfactoryLabel::not_applicable;
    throw DataError("invalid satisfactory_label value: '" + std::string(s) + "'");
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

Split hash_split(std::string_view id, std::uint64_t seed) {
    const std::string keyed = std::to_string(seed) + ":" + std::string(id);
    return (fnv1a64(keyed) % 100) < 20 ? Split::test : Split::train;
}

namespace {

using nlohmann::json;

CorpusRecord record_from_json(const json& obj, const std::string& where) {
    auto require_string = [&](const char* key) -> std::string {
        if (!obj.contains(key)) throw DataError(where + ": missing field \"" + key + "\"");
        if (!obj.at(key).is_string())
            throw DataError(where + ": field \"" + key + "\" must be a string");
        return obj.at(key).get<std::string>();
    };

    CorpusRecord rec;
    rec.id = require_string("id");
    if (rec.id.empty()) throw DataError(where + ": field \"id\" must be non-empty");
    const std::string article = require_string("article_text");
    const std::string bias = require_string("bias_query");
    if (bias.empty()) throw DataError(where + ": field \"bias_query\" must be non-empty");
    rec.split = parse_split(require_string("split"));
    rec.document = make_document(rec.id, article);
    rec.bias = make_bias_query(bias);

    if (obj.contains("reference_explanation")) {
        if (!obj.at("reference_explanation").is_string())
            throw DataError(where + ": field \"reference_explanation\" must be a string");
        rec.reference_explanation = obj.at("reference_explanation").get<std::string>();
    }
    if (obj.contains("question_id")) {
        if (!obj.at("question_id").is_number_integer())
            throw DataError(where + ": field \"question_id\" must be an integer");
        const int q = obj.at("question_id").get<int>();
        if (q < 1 || q > 9)
            throw DataError(where + ": question_id " + std::to_string(q) + " outside [1,9]");
        rec.question_id = q;
    }
    if (obj.contains("satisfactory_label")) {
        if (!obj.at("satisfactory_label").is_string())
            throw DataError(where + ": field \"satisfactory_label\" must be a string");
        rec.satisfactory_label =
            parse_satisfactory_label(obj.at("satisfactory_label").get<std::string>());
    }
    if (rec.question_id.has_value() != rec.satisfactory_label.has_value())
        throw DataError(where + ": question_id and satisfactory_label must appear together");
    if (obj.contains("relevant_sentence_indices")) {
        if (!obj.at("relevant_sentence_indices").is_array())
            throw DataError(where + ": field \"relevant_sentence_indices\" must be an array");
        for (const auto& v : obj.at("relevant_sentence_indices")) {
            if (!v.is_number_integer())
                throw DataError(where + ": relevant_sentence_indices must hold integers");
            const int idx = v.get<int>();
            if (idx < 0 || idx >= static_cast<int>(rec.document.sentences.size()))
                throw DataError(where + ": relevant sentence index " + std::to_string(idx) +
                                " out of range");
            rec.relevant_sentence_indices.push_back(idx);
        }
    }
    return rec;
}

}  // namespace

std::vector<CorpusRecord> load_jsonl_corpus(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open corpus file: " + path.string());

    std::vector<CorpusRecord> records;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::string where = path.filename().string() + ":" + std::to_string(line_no);
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw DataError(where + ": invalid JSON (" + std::string(e.what()) + ")");
        }
        if (!obj.is_object()) throw DataError(where + ": record must be a JSON object");
        CorpusRecord rec = record_from_json(obj, where);
        if (!seen_ids.insert(rec.id).second)
            throw DataError(where + ": duplicate record id \"" + rec.id + "\"");
        records.push_back(std::move(rec));
    }
    return records;
}

std::string to_jsonl_line(const CorpusRecord& record) {
    json obj;
    obj["id"] = record.id;
    obj["article_text"] = record.document.raw_text;
    obj["bias_query"] = record.bias.text;
    obj["split"] = to_string(record.split);
    if (record.reference_explanation) obj["reference_explanation"] = *record.reference_explanation;
    if (record.question_id) obj["question_id"] = *record.question_id;
    if (record.satisfactory_label) obj["satisfactory_label"] = to_string(*record.satisfactory_label);
    if (!record.relevant_sentence_indices.empty())
        obj["relevant_sentence_indices"] = record.relevant_sentence_indices;
    return obj.dump();
}

std::vector<CorpusRecord> adapt_liarplus(const std::filesystem::path& path,
                                         const LiarPlusColumnMap& columns) {
    if (columns.claim < 0 || columns.report < 0 || columns.justification < 0)
        throw ConfigError("column map must name claim, report and justification columns");

    std::ifstream in(path);
    if (!in) throw DataError("cannot open TSV file: " + path.string());

    std::vector<CorpusRecord> records;
    std::string line;
    std::size_t row_no = 0;
    int expected_columns = -1;
    while (std::getline(in, line)) {
        ++row_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::vector<std::string> fields;
        std::size_t begin = 0;
        while (true) {
            const std::size_t tab = line.find('\t', begin);
            if (tab == std::string::npos) {
                fields.push_back(line.substr(begin));
                break;
            }
            fields.push_back(line.substr(begin, tab - begin));
            begin = tab + 1;
        }

        const int max_col = std::max({columns.claim, columns.report, columns.justification,
                                      columns.split, columns.id});
        if (expected_columns < 0) {
            expected_columns = static_cast<int>(fields.size());
            if (max_col >= expected_columns)
                throw ConfigError("column map names column " + std::to_string(max_col) +
                                  " but the file has " + std::to_string(expected_columns) +
                                  " columns");
        } else if (static_cast<int>(fields.size()) != expected_columns) {
            throw DataError("row " + std::to_string(row_no) + " has " +
                            std::to_string(fields.size()) + " columns, expected " +
                            std::to_string(expected_columns));
        }

        CorpusRecord rec;
        rec.split = columns.split >= 0 ? parse_split(fields[columns.split])
                                       : columns.default_split;
        rec.id = columns.id >= 0
                     ? fields[columns.id]
                     : std::string(to_string(rec.split)) + "-row" + std::to_string(row_no);
        if (rec.id.empty())
            throw DataError("row " + std::to_string(row_no) + ": empty id");
        const std::string& claim = fields[columns.claim];
        if (claim.empty())
            throw DataError("row " + std::to_string(row_no) + ": empty claim");
        rec.document = make_document(rec.id, fields[columns.report]);
        rec.bias = make_bias_query(claim);
        if (!fields[columns.justification].empty())
            rec.reference_explanation = fields[columns.justification];
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<CorpusRecord> adapt_health_reviews(const std::filesystem::path& dir,
                                               std::uint64_t split_seed) {
    if (!std::filesystem::is_directory(dir))
        throw DataError("not a directory: " + dir.string());

    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    std::vector<CorpusRecord> records;
    for (const auto& file : files) {
        std::ifstream in(file);
        if (!in) throw DataError("cannot open review file: " + file.string());
        json obj;
        try {
            obj = json::parse(in);
        } catch (const json::parse_error& e) {
            throw DataError(file.filename().string() + ": invalid JSON (" +
                            std::string(e.what()) + ")");
        }
        const std::string where = file.filename().string();
        if (!obj.contains("id") || !obj.at("id").is_string())
            throw DataError(where + ": missing review \"id\"");
        const std::string review_id = obj.at("id").get<std::string>();
        const std::string article =
            obj.contains("article_text") && obj.at("article_text").is_string()
                ? obj.at("article_text").get<std::string>()
                : std::string();
        if (article.empty()) {
            std::cerr << "warning: review " << review_id << " has no article text, skipping\n";
            continue;
        }
        if (!obj.contains("questions") || !obj.at("questions").is_array())
            throw DataError(where + ": review " + review_id + " has no \"questions\" array");

        for (const auto& q : obj.at("questions")) {
            if (!q.is_object() || !q.contains("question_id") ||
                !q.at("question_id").is_number_integer())
                throw DataError(where + ": review " + review_id + " has a malformed question");
            const int question_id = q.at("question_id").get<int>();
            if (question_id < 1 || question_id > 10)
                throw DataError(where + ": review " + review_id + " question_id " +
                                std::to_string(question_id) + " outside [1,10]");
            if (question_id == 10) continue;  // needs information beyond the article
            if (!q.contains("question_text") || !q.at("question_text").is_string() ||
                q.at("question_text").get<std::string>().empty())
                throw DataError(where + ": review " + review_id + " question " +
                                std::to_string(question_id) + " lacks question_text");
            if (!q.contains("label") || !q.at("label").is_string())
                throw DataError(where + ": review " + review_id + " question " +
                                std::to_string(question_id) + " lacks label");

            CorpusRecord rec;
            rec.id = review_id + "-q" + std::to_string(question_id);
            rec.document = make_document(rec.id, article);
            rec.bias = make_bias_query(q.at("question_text").get<std::string>());
            rec.question_id = question_id;
            rec.satisfactory_label = parse_satisfactory_label(q.at("label").get<std::string>());
            if (q.contains("explanation") && q.at("explanation").is_string() &&
                !q.at("explanation").get<std::string>().empty())
                rec.reference_explanation = q.at("explanation").get<std::string>();
            rec.split = hash_split(rec.id, split_seed);
            records.push_back(std::move(rec));
        }
    }
    return records;
}

CorpusStats corpus_stats(const std::vector<CorpusRecord>& records) {
    CorpusStats stats;
    double words = 0.0;
    double sents = 0.0;
    for (const CorpusRecord& rec : records) {
        if (!rec.reference_explanation) continue;
        ++stats.total_count;
        words += static_cast<double>(tokenize(*rec.reference_explanation).size());
        sents += static_cast<double>(segment_sentences(*rec.reference_explanation).size());
    }
    if (stats.total_count == 0)
        throw DataError("corpus has no reference explanations to aggregate");
    stats.avg_words = words / static_cast<double>(stats.total_count);
    stats.avg_sentences = sents / static_cast<double>(stats.total_count);
    return stats;
}

}  // namespace claimrank
