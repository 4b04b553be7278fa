#ifndef STYLO_FEATURES_H_
#define STYLO_FEATURES_H_

#include <span>
#include <string>
#include <vector>

#include "stylo/metrics.h"
#include "stylo/motifs.h"
#include "stylo/preprocess.h"

namespace stylo {

struct FeatureVector {
  std::string book_id;
  std::string author;
  std::vector<double> values;
};

struct FeatureMatrix {
  std::vector<std::string> feature_names;
  std::vector<FeatureVector> rows;

  std::size_t size() const { return rows.size(); }
  std::size_t dimension() const { return feature_names.size(); }
  // Distinct authors, sorted.
  std::vector<std::string> label_set() const;
  // Row lengths match the names, values are finite, at least 2 labels.
  // With `require_two_per_label`, every label must also occur twice.
  // Throws DataError.
  void validate(bool require_two_per_label = true) const;
};

// "m1".."m13".
std::vector<std::string> motif_feature_names();
std::vector<double> motif_features(const MotifCensus& census);

// adn_mean .. cc_skew, assortativity.
std::vector<std::string> network_feature_names();
// An undefined assortativity becomes 0 with a logged warning.
std::vector<double> network_features(const NetworkMetrics& metrics,
                                     std::string_view book_id = {});

// Relative frequencies of the `top_k` globally most frequent words (ties
// lexicographic). Streams must come from the original scenario. Throws
// DataError when the corpus has fewer than `top_k` distinct words.
FeatureMatrix top_word_features(std::span<const TokenStream> streams,
                                std::span<const std::string> authors,
                                std::size_t top_k = 20);

}  // namespace stylo

#endif  // STYLO_FEATURES_H_
