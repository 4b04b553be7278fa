#ifndef STYLO_ERROR_H_
#define STYLO_ERROR_H_

#include <stdexcept>
#include <string>

namespace stylo {

// Bad flags, missing input files, unknown scenario tags. Maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or unusable data (manifest rows, book contents, degenerate
// feature matrices). Maps to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stylo

#endif  // STYLO_ERROR_H_
