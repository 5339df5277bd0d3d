#ifndef CLAIMRANK_ERRORS_HPP
#define CLAIMRANK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace claimrank {

// Raised for problems in input data: malformed corpus lines, missing
// embedding vectors, empty vocabularies. Maps to exit code 1 in the CLI.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised for invalid run configuration: unknown method names, bad column
// maps. Maps to exit code 2 in the CLI.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace claimrank

#endif  // CLAIMRANK_ERRORS_HPP
