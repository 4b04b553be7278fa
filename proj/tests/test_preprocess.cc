#include <algorithm>

#include "doctest.h"
#include "stylo/error.h"
#include "stylo/preprocess.h"
#include "stylo/random.h"
#include "support/temp_dir.h"

using Tokens = std::vector<std::string>;

namespace {

constexpr const char* kDialogueExtract =
    "\"There are three men waiting for him at the door\", said Holmes. "
    "\"Oh, indeed! You seem to have done the thing very completely. I must "
    "compliment you.\" \"And I you\", Holmes answered.";

bool valid_token(const std::string& t) {
  if (t.empty()) return false;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(t[i]);
    if (c >= 0x80) continue;
    if (c == '\'') {
      if (i == 0 || i + 1 == t.size()) return false;
      continue;
    }
    if (c < 'a' || c > 'z') return false;
  }
  return true;
}

bool is_subsequence(const Tokens& sub, const Tokens& full) {
  std::size_t j = 0;
  for (const auto& t : full) {
    if (j < sub.size() && sub[j] == t) ++j;
  }
  return j == sub.size();
}

std::string random_text(stylo::Rng& rng) {
  static const char* kWords[] = {
      "The",   "door",  "said",    "Holmes", "waiting", "men",     "is",
      "he's",  "isn't", "walked",  "ladies", "boxes",   "running", "hoped",
      "a",     "an",    "and",     "I",      "you",     "thing",   "it",
      "1892",  "don't", "'tis",    "o'clock", "to-day", "_word_",  "Café",
      "WATCH", "knew",  "indeed",  "dogs",   "had",     "had"};
  static const char* kPunct[] = {" ", " ", " ", ", ", ". ", "! ", "? ", "; ",
                                 " -- ", "\n", " \"", "\" ", " '", "' "};
  std::string text;
  const std::size_t n = 1 + rng.index(60);
  for (std::size_t i = 0; i < n; ++i) {
    text += kWords[rng.index(std::size(kWords))];
    text += kPunct[rng.index(std::size(kPunct))];
  }
  return text;
}

}  // namespace

TEST_CASE("tokenize: punctuation, case and contractions") {
  CHECK(stylo::tokenize("\"Oh, indeed! You seem") == Tokens{"oh", "indeed", "you", "seem"});
  CHECK(stylo::tokenize("He's here.") == Tokens{"he's", "here"});
  CHECK(stylo::tokenize("\"door\", said Holmes.") == Tokens{"door", "said", "holmes"});
  CHECK(stylo::tokenize("") == Tokens{});
  CHECK(stylo::tokenize("isn't it?") == Tokens{"isn't", "it"});
  // Typographic apostrophes and quotes.
  CHECK(stylo::tokenize("\xE2\x80\x9CHe\xE2\x80\x99s gone\xE2\x80\x9D") ==
        Tokens{"he's", "gone"});
  // Leading/trailing apostrophes are quote marks, not part of the word.
  CHECK(stylo::tokenize("'Tis the dogs' dinner") == Tokens{"tis", "the", "dogs", "dinner"});
  CHECK(stylo::tokenize("to-day at 10 o'clock, in 1892 or 2nd") ==
        Tokens{"to", "day", "at", "o'clock", "in", "or"});
  CHECK(stylo::tokenize("''' 123 ' _x_") == Tokens{"x"});
  CHECK(stylo::tokenize("CAF\xC3\x89 na\xC3\xAFve") == Tokens{"caf\xC3\xA9", "na\xC3\xAFve"});
}

TEST_CASE("stopword list") {
  const auto& stops = stylo::StopwordSet::english();
  CHECK(stops.size() == 127);
  for (const char* w : {"i", "me", "now", "s", "t", "don", "should", "the", "and"}) {
    CHECK(stops.contains(w));
  }
  CHECK_FALSE(stops.contains("don't"));
  CHECK_FALSE(stops.contains("The"));
  CHECK_FALSE(stops.contains("holmes"));

  CHECK(stylo::remove_stopwords(
            Tokens{"there", "are", "three", "men", "waiting", "for", "him", "at", "the", "door"},
            stops) == Tokens{"three", "men", "waiting", "door"});
  CHECK(stylo::remove_stopwords(Tokens{}, stops) == Tokens{});
  CHECK(stylo::remove_stopwords(Tokens{"holmes", "door"}, stops) == Tokens{"holmes", "door"});
}

TEST_CASE("stopword file") {
  stylo::testing::TempDir dir;
  const auto p = dir.write("stops.txt", "# custom list\nThe\nof # trailing comment\n\nand\n");
  const auto stops = stylo::StopwordSet::from_file(p);
  CHECK(stops.size() == 3);
  CHECK(stops.contains("the"));
  CHECK(stops.contains("of"));
  CHECK_THROWS_AS(stylo::StopwordSet::from_file(dir.path() / "none"), stylo::ConfigError);
}

TEST_CASE("default lemmatizer") {
  const auto& lem = stylo::default_lemmatizer();
  CHECK(stylo::lemmatize(Tokens{"waiting"}, lem) == Tokens{"wait"});
  CHECK(stylo::lemmatize(Tokens{"said"}, lem) == Tokens{"say"});
  CHECK(stylo::lemmatize(Tokens{"zxqv"}, lem) == Tokens{"zxqv"});

  struct Case {
    const char* in;
    const char* out;
  };
  for (const Case c : {Case{"men", "men"}, Case{"answered", "answer"}, Case{"done", "do"},
                       Case{"holmes", "holmes"}, Case{"indeed", "indeed"},
                       Case{"thing", "thing"}, Case{"completely", "completely"},
                       Case{"ladies", "lady"}, Case{"boxes", "box"}, Case{"churches", "church"},
                       Case{"glasses", "glass"}, Case{"dogs", "dog"}, Case{"running", "run"},
                       Case{"stopped", "stop"}, Case{"making", "make"}, Case{"hoped", "hope"},
                       Case{"looked", "look"}, Case{"carried", "carry"}, Case{"was", "be"},
                       Case{"is", "be"}, Case{"his", "his"}, Case{"this", "this"},
                       Case{"glass", "glass"}, Case{"he's", "he's"}, Case{"falling", "fall"},
                       Case{"created", "create"}, Case{"times", "time"}}) {
    CAPTURE(c.in);
    CHECK(lem.lemma(c.in) == c.out);
  }
}

TEST_CASE("lemma lexicon file overrides the built-in entries") {
  stylo::testing::TempDir dir;
  stylo::RuleLemmatizer lem;
  lem.load_lexicon(dir.write("lex.tsv", "# surface\tlemma\nmen\tman\nsaid\tspeak\n"));
  CHECK(lem.lemma("men") == "man");
  CHECK(lem.lemma("said") == "speak");
  CHECK(lem.lemma("waiting") == "wait");
  CHECK_THROWS_AS(lem.load_lexicon(dir.write("bad.tsv", "nolemma\n")), stylo::DataError);
}

TEST_CASE("scenario pipelines on a short dialogue extract") {
  const auto& stops = stylo::StopwordSet::english();
  const auto& lem = stylo::default_lemmatizer();

  const auto original = stylo::apply_scenario(kDialogueExtract, stylo::Scenario::kOriginal, stops, lem);
  CHECK(original.tokens == stylo::tokenize(kDialogueExtract));
  CHECK(original.tokens.front() == "there");

  const auto both = stylo::apply_scenario(kDialogueExtract, stylo::Scenario::kNoStopLemma, stops, lem);
  // Both filters applied to the whole extract.
  CHECK(both.tokens == Tokens{"three", "men", "wait", "door", "say", "holmes", "oh", "indeed",
                              "seem", "do", "thing", "completely", "must", "compliment",
                              "holmes", "answer"});
  CHECK(both.scenario == stylo::Scenario::kNoStopLemma);

  CHECK(stylo::apply_scenario("the waiting", stylo::Scenario::kNoStopLemma, stops, lem).tokens ==
        Tokens{"wait"});
}

TEST_CASE("scenario tags") {
  for (auto s : stylo::kAllScenarios) CHECK(stylo::parse_scenario(stylo::scenario_tag(s)) == s);
  CHECK(stylo::scenario_tag(stylo::Scenario::kNoStopLemma) == "nostop-lemma");
  CHECK_THROWS_AS(stylo::parse_scenario("stemmed"), stylo::ConfigError);
}

TEST_CASE("pipeline invariants on random text") {
  const auto& stops = stylo::StopwordSet::english();
  const auto& lem = stylo::default_lemmatizer();
  stylo::Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::string text = random_text(rng);
    CAPTURE(text);
    const auto orig = stylo::apply_scenario(text, stylo::Scenario::kOriginal, stops, lem).tokens;
    const auto nostop = stylo::apply_scenario(text, stylo::Scenario::kNoStop, stops, lem).tokens;
    const auto lemma = stylo::apply_scenario(text, stylo::Scenario::kLemma, stops, lem).tokens;
    const auto both = stylo::apply_scenario(text, stylo::Scenario::kNoStopLemma, stops, lem).tokens;

    CHECK(std::all_of(orig.begin(), orig.end(), valid_token));
    CHECK(std::all_of(lemma.begin(), lemma.end(), valid_token));
    CHECK(nostop.size() <= orig.size());
    CHECK(lemma.size() == orig.size());
    CHECK(is_subsequence(nostop, orig));
    CHECK(is_subsequence(both, lemma));
    CHECK(stylo::remove_stopwords(nostop, stops) == nostop);
  }
}
