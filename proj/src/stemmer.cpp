#include "claimrank/stemmer.hpp"

#include <algorithm>

namespace claimrank {

namespace {

// Porter's measure and consonant predicates operate on a lowercase word.
// 'y' is a vowel when preceded by a consonant.

bool is_consonant(const std::string& w, std::size_t i) {
    switch (w[i]) {
        case 'a': case 'e': case 'i': case 'o': case 'u':
            return false;
        case 'y':
            return i == 0 ? true : !is_consonant(w, i - 1);
        default:
            return true;
    }
}

// Number of VC sequences in w[0..len).
int measure(const std::string& w, std::size_t len) {
    int m = 0;
    std::size_t i = 0;
    while (i < len && is_consonant(w, i)) ++i;
    while (i < len) {
        while (i < len && !is_consonant(w, i)) ++i;
        if (i == len) break;
        ++m;
        while (i < len && is_consonant(w, i)) ++i;
    }
    return m;
}

bool has_vowel(const std::string& w, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i)
        if (!is_consonant(w, i)) return true;
    return false;
}

bool double_consonant(const std::string& w, std::size_t len) {
    return len >= 2 && w[len - 1] == w[len - 2] && is_consonant(w, len - 1);
}

// cvc where the final c is not w, x or y.
bool ends_cvc(const std::string& w, std::size_t len) {
    if (len < 3) return false;
    if (!is_consonant(w, len - 3) || is_consonant(w, len - 2) || !is_consonant(w, len - 1))
        return false;
    const char c = w[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
}

bool ends_with(const std::string& w, const char* suffix) {
    const std::size_t n = std::char_traits<char>::length(suffix);
    return w.size() >= n && w.compare(w.size() - n, n, suffix) == 0;
}

// Replaces `suffix` with `repl` when the stem's measure exceeds `min_m`.
bool replace_if(std::string& w, const char* suffix, const char* repl, int min_m) {
    if (!ends_with(w, suffix)) return false;
    const std::size_t stem_len = w.size() - std::char_traits<char>::length(suffix);
    if (measure(w, stem_len) <= min_m) return true;  // suffix matched, rule consumed
    w.resize(stem_len);
    w += repl;
    return true;
}

void step_1a(std::string& w) {
    if (ends_with(w, "sses")) {
        w.resize(w.size() - 2);
    } else if (ends_with(w, "ies")) {
        w.resize(w.size() - 2);
    } else if (ends_with(w, "ss")) {
        // keep
    } else if (ends_with(w, "s")) {
        w.resize(w.size() - 1);
    }
}

void step_1b(std::string& w) {
    bool cleanup = false;
    if (ends_with(w, "eed")) {
        if (measure(w, w.size() - 3) > 0) w.resize(w.size() - 1);
    } else if (ends_with(w, "ed") && has_vowel(w, w.size() - 2)) {
        w.resize(w.size() - 2);
        cleanup = true;
    } else if (ends_with(w, "ing") && has_vowel(w, w.size() - 3)) {
        w.resize(w.size() - 3);
        cleanup = true;
    }
    if (!cleanup) return;
    if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
        w += 'e';
    } else if (double_consonant(w, w.size())) {
        const char c = w.back();
        if (c != 'l' && c != 's' && c != 'z') w.resize(w.size() - 1);
    } else if (measure(w, w.size()) == 1 && ends_cvc(w, w.size())) {
        w += 'e';
    }
}

void step_1c(std::string& w) {
    if (ends_with(w, "y") && has_vowel(w, w.size() - 1)) w.back() = 'i';
}

void step_2(std::string& w) {
    static const std::pair<const char*, const char*> rules[] = {
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
        {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},   {"entli", "ent"},
        {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
        {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
    };
    for (const auto& [suffix, repl] : rules)
        if (replace_if(w, suffix, repl, 0)) return;
}

void step_3(std::string& w) {
    static const std::pair<const char*, const char*> rules[] = {
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    };
    for (const auto& [suffix, repl] : rules)
        if (replace_if(w, suffix, repl, 0)) return;
}

void step_4(std::string& w) {
    static const char* suffixes[] = {
        "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement",
        "ment", "ent", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
    };
    for (const char* suffix : suffixes) {
        if (!ends_with(w, suffix)) continue;
        const std::size_t stem_len = w.size() - std::char_traits<char>::length(suffix);
        if (measure(w, stem_len) > 1) w.resize(stem_len);
        return;
    }
    if (ends_with(w, "ion")) {
        const std::size_t stem_len = w.size() - 3;
        if (stem_len > 0 && (w[stem_len - 1] == 's' || w[stem_len - 1] == 't') &&
            measure(w, stem_len) > 1)
            w.resize(stem_len);
    }
}

void step_5(std::string& w) {
    if (ends_with(w, "e")) {
        const std::size_t stem_len = w.size() - 1;
        const int m = measure(w, stem_len);
        if (m > 1 || (m == 1 && !ends_cvc(w, stem_len))) w.resize(stem_len);
    }
    if (double_consonant(w, w.size()) && w.back() == 'l' && measure(w, w.size()) > 1)
        w.resize(w.size() - 1);
}

}  // namespace

std::string porter_stem(const std::string& token) {
    if (token.size() < 3) return token;
    for (char c : token)
        if (c < 'a' || c > 'z') return token;

    std::string w = token;
    step_1a(w);
    step_1b(w);
    step_1c(w);
    step_2(w);
    step_3(w);
    step_4(w);
    step_5(w);
    return w;
}

std::vector<std::string> stem_tokens(const std::vector<std::string>& tokens) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(porter_stem(t));
    return out;
}

}  // namespace claimrank
