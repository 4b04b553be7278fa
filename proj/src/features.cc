#include "stylo/features.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "stylo/error.h"

namespace stylo {

std::vector<std::string> FeatureMatrix::label_set() const {
  std::set<std::string> labels;
  for (const auto& r : rows) labels.insert(r.author);
  return {labels.begin(), labels.end()};
}

void FeatureMatrix::validate(bool require_two_per_label) const {
  std::map<std::string, int> counts;
  for (const auto& r : rows) {
    if (r.values.size() != feature_names.size()) {
      throw DataError(fmt::format("feature row '{}' has {} values, expected {}",
                                  r.book_id, r.values.size(), feature_names.size()));
    }
    for (double v : r.values) {
      if (!std::isfinite(v)) {
        throw DataError(fmt::format("feature row '{}' has a non-finite value", r.book_id));
      }
    }
    ++counts[r.author];
  }
  if (counts.size() < 2) throw DataError("feature matrix needs at least 2 labels");
  if (require_two_per_label) {
    for (const auto& [label, n] : counts) {
      if (n < 2) {
        throw DataError(fmt::format("label '{}' occurs only once", label));
      }
    }
  }
}

std::vector<std::string> motif_feature_names() {
  std::vector<std::string> names;
  for (int k = 1; k <= kMotifTypeCount; ++k) names.push_back(fmt::format("m{}", k));
  return names;
}

std::vector<double> motif_features(const MotifCensus& census) {
  std::vector<double> v;
  v.reserve(kMotifTypeCount);
  for (auto c : census.counts) v.push_back(static_cast<double>(c));
  return v;
}

std::vector<std::string> network_feature_names() {
  return {"adn_mean", "adn_dev", "adn_skew", "l_mean",  "l_dev",
          "l_skew",   "b_mean",  "b_dev",    "b_skew",  "cc_mean",
          "cc_dev",   "cc_skew", "assortativity"};
}

std::vector<double> network_features(const NetworkMetrics& m,
                                     std::string_view book_id) {
  if (!m.assortativity) {
    spdlog::warn("assortativity undefined for '{}'; using 0", book_id);
  }
  return {m.adn.mean,         m.adn.deviation,         m.adn.skewness,
          m.path_length.mean, m.path_length.deviation, m.path_length.skewness,
          m.betweenness.mean, m.betweenness.deviation, m.betweenness.skewness,
          m.clustering.mean,  m.clustering.deviation,  m.clustering.skewness,
          m.assortativity.value_or(0.0)};
}

FeatureMatrix top_word_features(std::span<const TokenStream> streams,
                                std::span<const std::string> authors,
                                std::size_t top_k) {
  if (streams.size() != authors.size()) {
    throw DataError("top_word_features: one author per stream required");
  }
  std::unordered_map<std::string, std::uint64_t> global;
  for (const TokenStream& s : streams) {
    if (s.scenario != Scenario::kOriginal) {
      throw DataError("word-frequency features are taken from the original scenario");
    }
    for (const auto& t : s.tokens) ++global[t];
  }
  if (global.size() < top_k) {
    throw DataError(fmt::format("corpus has {} distinct words, need at least {}",
                                global.size(), top_k));
  }
  std::vector<std::pair<std::string, std::uint64_t>> ranked(global.begin(), global.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  ranked.resize(top_k);

  FeatureMatrix matrix;
  std::unordered_map<std::string, std::size_t> column;
  for (std::size_t c = 0; c < ranked.size(); ++c) {
    matrix.feature_names.push_back(ranked[c].first);
    column.emplace(ranked[c].first, c);
  }
  for (std::size_t i = 0; i < streams.size(); ++i) {
    FeatureVector row;
    row.book_id = streams[i].book_id;
    row.author = authors[i];
    row.values.assign(top_k, 0.0);
    for (const auto& t : streams[i].tokens) {
      if (const auto it = column.find(t); it != column.end()) row.values[it->second] += 1.0;
    }
    const double total = static_cast<double>(streams[i].tokens.size());
    if (total > 0) {
      for (double& v : row.values) v /= total;
    }
    matrix.rows.push_back(std::move(row));
  }
  return matrix;
}

}  // namespace stylo
