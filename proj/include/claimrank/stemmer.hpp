#ifndef CLAIMRANK_STEMMER_HPP
#define CLAIMRANK_STEMMER_HPP

#include <string>
#include <vector>

namespace claimrank {

// Porter stemmer (the classic 1980 algorithm). Tokens are assumed lowercase;
// tokens shorter than 3 characters or containing non-letters pass through
// unchanged. Used only for optional ROUGE preprocessing.
std::string porter_stem(const std::string& token);

std::vector<std::string> stem_tokens(const std::vector<std::string>& tokens);

}  // namespace claimrank

#endif  // CLAIMRANK_STEMMER_HPP
