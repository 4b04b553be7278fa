#include "stylo/app/pipeline.h"

#include <map>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "stylo/error.h"
#include "stylo/metrics.h"
#include "stylo/motifs.h"
#include "stylo/network.h"
#include "stylo/parallel.h"

namespace stylo::app {

namespace {

std::string book_label(const BookRecord& record) {
  return fmt::format("'{}' ({})", record.title, record.path);
}

// Runs body(i) per book, prefixing data errors with the book.
template <typename Body>
void for_each_book(const std::vector<BookRecord>& records, unsigned threads, Body body) {
  parallel_for(records.size(), threads, [&](std::size_t i) {
    try {
      body(i);
    } catch (const DataError& e) {
      throw DataError(fmt::format("book {}: {}", book_label(records[i]), e.what()));
    }
  });
}

}  // namespace

std::string_view feature_set_tag(FeatureSet set) {
  switch (set) {
    case FeatureSet::kMotifs:
      return "motifs";
    case FeatureSet::kNetStats:
      return "netstats";
    case FeatureSet::kTopWords:
      return "topwords";
  }
  return "";
}

FeatureSet parse_feature_set(std::string_view tag) {
  for (auto set : {FeatureSet::kMotifs, FeatureSet::kNetStats, FeatureSet::kTopWords}) {
    if (feature_set_tag(set) == tag) return set;
  }
  throw ConfigError(fmt::format("unknown feature set '{}' (expected motifs, netstats or topwords)", tag));
}

Preprocessor::Preprocessor(const PreprocessOptions& options)
    : stops_(options.stopwords ? StopwordSet::from_file(*options.stopwords)
                               : StopwordSet::english()) {
  if (options.lexicon) lemmatizer_.load_lexicon(*options.lexicon);
}

TokenStream Preprocessor::run(std::string_view text, Scenario scenario) const {
  return apply_scenario(text, scenario, stops_, lemmatizer_);
}

LoadedCorpus load_corpus(const CorpusManifest& manifest, unsigned threads) {
  LoadedCorpus corpus;
  corpus.records = manifest.records();
  const std::size_t n = corpus.records.size();

  std::map<std::string, int> title_uses;
  for (const auto& r : corpus.records) ++title_uses[r.title];
  for (const auto& r : corpus.records) {
    corpus.book_ids.push_back(title_uses[r.title] > 1 ? fmt::format("{} ({})", r.title, r.path)
                                                      : r.title);
  }

  corpus.texts.resize(n);
  for_each_book(corpus.records, threads, [&](std::size_t i) {
    corpus.texts[i] = strip_boilerplate(read_book_text(corpus.records[i].resolved_path));
  });
  return corpus;
}

ScenarioCorpus prepare_scenario(const LoadedCorpus& corpus, Scenario scenario,
                                const Preprocessor& preprocessor, unsigned threads) {
  const std::size_t n = corpus.records.size();
  ScenarioCorpus out;
  out.scenario = scenario;
  out.streams.resize(n);
  for_each_book(corpus.records, threads, [&](std::size_t i) {
    out.streams[i] = preprocessor.run(corpus.texts[i], scenario);
    out.streams[i].book_id = corpus.book_ids[i];
    if (out.streams[i].tokens.empty()) throw DataError("no tokens after preprocessing");
  });

  for (std::size_t i = 0; i < n; ++i) {
    out.full_lengths.push_back(out.streams[i].tokens.size());
    out.authors.push_back(corpus.records[i].author);
  }
  const TruncationPolicy policy = truncation_policy_for(out.full_lengths);
  out.truncation_length = policy.target_length;
  for (auto& s : out.streams) s.tokens = truncate(std::move(s.tokens), policy);
  spdlog::info("scenario {}: {} books truncated to {} tokens", scenario_tag(scenario), n,
               policy.target_length);
  return out;
}

FeatureMatrix build_features(const ScenarioCorpus& corpus, FeatureSet set, unsigned threads) {
  if (set == FeatureSet::kTopWords) {
    return top_word_features(corpus.streams, corpus.authors);
  }

  FeatureMatrix matrix;
  matrix.feature_names =
      set == FeatureSet::kMotifs ? motif_feature_names() : network_feature_names();
  const std::size_t n = corpus.streams.size();
  matrix.rows.resize(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const auto& stream = corpus.streams[i];
    try {
      const DirectedNetwork net = build_network(stream.tokens);
      FeatureVector& row = matrix.rows[i];
      row.book_id = stream.book_id;
      row.author = corpus.authors[i];
      if (set == FeatureSet::kMotifs) {
        row.values = motif_features(triad_census(net, 1));
      } else {
        row.values = network_features(compute_network_metrics(to_undirected(net), 1),
                                      stream.book_id);
      }
    } catch (const DataError& e) {
      throw DataError(fmt::format("book '{}': {}", stream.book_id, e.what()));
    }
  });
  return matrix;
}

}  // namespace stylo::app
