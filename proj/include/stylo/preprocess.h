#ifndef STYLO_PREPROCESS_H_
#define STYLO_PREPROCESS_H_

#include <array>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace stylo {

enum class Scenario { kOriginal, kNoStop, kLemma, kNoStopLemma };

inline constexpr std::array<Scenario, 4> kAllScenarios = {
    Scenario::kOriginal, Scenario::kNoStop, Scenario::kLemma,
    Scenario::kNoStopLemma};

// "original", "nostop", "lemma", "nostop-lemma".
std::string_view scenario_tag(Scenario s);
// Throws ConfigError for anything else.
Scenario parse_scenario(std::string_view tag);

struct TokenStream {
  std::vector<std::string> tokens;
  std::string book_id;
  Scenario scenario = Scenario::kOriginal;
};

class StopwordSet {
 public:
  // The built-in 127-word English list.
  static const StopwordSet& english();
  // One word per line; blank lines and `#` comments skipped; words lowercased.
  static StopwordSet from_file(const std::filesystem::path& path);

  explicit StopwordSet(std::unordered_set<std::string> words)
      : words_(std::move(words)) {}

  bool contains(std::string_view word) const {
    return words_.find(std::string(word)) != words_.end();
  }
  std::size_t size() const { return words_.size(); }
  const std::unordered_set<std::string>& words() const { return words_; }

 private:
  std::unordered_set<std::string> words_;
};

// Maps a lowercase token to its lemma. Implementations must be deterministic,
// return a non-empty token and be safe to call from several threads.
class Lemmatizer {
 public:
  virtual ~Lemmatizer() = default;
  virtual std::string lemma(std::string_view token) const = 0;
};

// Exception lexicon for irregular forms plus suffix rules for regular
// plurals (-s, -es, -ies) and verb forms (-ing, -ed), undoing consonant
// doubling and restoring a dropped final e. Words it cannot analyse come back
// unchanged.
class RuleLemmatizer : public Lemmatizer {
 public:
  RuleLemmatizer();
  // Adds `surface<TAB>lemma` entries on top of the built-in lexicon; entries
  // in the file win.
  void load_lexicon(const std::filesystem::path& path);
  void add_exception(std::string surface, std::string lemma);

  std::string lemma(std::string_view token) const override;

 private:
  std::unordered_map<std::string, std::string> lexicon_;
};

const RuleLemmatizer& default_lemmatizer();

// Lowercase words in text order. Anything that is not a letter or an
// apostrophe splits words; an apostrophe survives only between two letters;
// runs containing a digit are dropped.
std::vector<std::string> tokenize(std::string_view text);

std::vector<std::string> remove_stopwords(std::span<const std::string> tokens,
                                          const StopwordSet& stops);

std::vector<std::string> lemmatize(std::span<const std::string> tokens,
                                   const Lemmatizer& lemmatizer);

// original: tokenize; nostop: tokenize, drop stopwords; lemma: tokenize,
// lemmatize; nostop-lemma: tokenize, drop stopwords, lemmatize.
TokenStream apply_scenario(std::string_view text, Scenario scenario,
                           const StopwordSet& stops,
                           const Lemmatizer& lemmatizer);

}  // namespace stylo

#endif  // STYLO_PREPROCESS_H_
