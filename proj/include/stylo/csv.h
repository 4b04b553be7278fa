#ifndef STYLO_CSV_H_
#define STYLO_CSV_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stylo::csv {

// Splits one CSV line into fields; double-quoted fields may contain commas
// and doubled quotes. Returns nullopt for an unterminated quote or stray
// characters after a closing quote.
std::optional<std::vector<std::string>> split_line(std::string_view line);

// Quotes `field` only if it contains a comma, a quote or a line break.
std::string escape(std::string_view field);

}  // namespace stylo::csv

#endif  // STYLO_CSV_H_
