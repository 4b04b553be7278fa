#ifndef STYLO_APP_PIPELINE_H_
#define STYLO_APP_PIPELINE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "stylo/corpus.h"
#include "stylo/features.h"
#include "stylo/preprocess.h"

namespace stylo::app {

enum class FeatureSet { kMotifs, kNetStats, kTopWords };

// "motifs", "netstats", "topwords".
std::string_view feature_set_tag(FeatureSet set);
// Throws ConfigError for anything else.
FeatureSet parse_feature_set(std::string_view tag);

struct PreprocessOptions {
  std::optional<std::filesystem::path> stopwords;
  std::optional<std::filesystem::path> lexicon;
};

// Stopword list and lemmatizer shared by every book of a run.
class Preprocessor {
 public:
  explicit Preprocessor(const PreprocessOptions& options = {});

  TokenStream run(std::string_view text, Scenario scenario) const;

 private:
  StopwordSet stops_;
  RuleLemmatizer lemmatizer_;
};

// Boilerplate-stripped book texts, read once per run.
struct LoadedCorpus {
  std::vector<BookRecord> records;
  // Unique per book: the title, with the manifest path appended when two
  // books share a title.
  std::vector<std::string> book_ids;
  std::vector<std::string> texts;
};

// Books are read in parallel; errors name the failing book.
LoadedCorpus load_corpus(const CorpusManifest& manifest, unsigned threads = 0);

// All books of one scenario cut to the common length.
struct ScenarioCorpus {
  Scenario scenario = Scenario::kOriginal;
  std::size_t truncation_length = 0;
  std::vector<TokenStream> streams;
  std::vector<std::string> authors;
  // Stream lengths before truncation.
  std::vector<std::size_t> full_lengths;
};

ScenarioCorpus prepare_scenario(const LoadedCorpus& corpus, Scenario scenario,
                                const Preprocessor& preprocessor,
                                unsigned threads = 0);

// Motif counts or undirected network statistics per book, or word
// frequencies (original scenario only).
FeatureMatrix build_features(const ScenarioCorpus& corpus, FeatureSet set,
                             unsigned threads = 0);

}  // namespace stylo::app

#endif  // STYLO_APP_PIPELINE_H_
