#include "stylo/preprocess.h"

#include <fstream>

#include <fmt/format.h>

#include "stylo/error.h"

namespace stylo {
namespace {

constexpr const char* kEnglishStopwords[] = {
    "i",          "me",      "my",      "myself",   "we",      "our",
    "ours",       "ourselves", "you",   "your",     "yours",   "yourself",
    "yourselves", "he",      "him",     "his",      "himself", "she",
    "her",        "hers",    "herself", "it",       "its",     "itself",
    "they",       "them",    "their",   "theirs",   "themselves", "what",
    "which",      "who",     "whom",    "this",     "that",    "these",
    "those",      "am",      "is",      "are",      "was",     "were",
    "be",         "been",    "being",   "have",     "has",     "had",
    "having",     "do",      "does",    "did",      "doing",   "a",
    "an",         "the",     "and",     "but",      "if",      "or",
    "because",    "as",      "until",   "while",    "of",      "at",
    "by",         "for",     "with",    "about",    "against", "between",
    "into",       "through", "during",  "before",   "after",   "above",
    "below",      "to",      "from",    "up",       "down",    "in",
    "out",        "on",      "off",     "over",     "under",   "again",
    "further",    "then",    "once",    "here",     "there",   "when",
    "where",      "why",     "how",     "all",      "any",     "both",
    "each",       "few",     "more",    "most",     "other",   "some",
    "such",       "no",      "nor",     "not",      "only",    "own",
    "same",       "so",      "than",    "too",      "very",    "s",
    "t",          "can",     "will",    "just",     "don",     "should",
    "now"};

// Irregular verb forms, plus words the suffix rules would mangle.
constexpr std::pair<const char*, const char*> kLexicon[] = {
    // be / have / do / go
    {"am", "be"}, {"is", "be"}, {"are", "be"}, {"was", "be"}, {"were", "be"},
    {"been", "be"}, {"being", "be"}, {"has", "have"}, {"had", "have"},
    {"having", "have"}, {"does", "do"}, {"did", "do"}, {"done", "do"},
    {"doing", "do"}, {"goes", "go"}, {"went", "go"}, {"gone", "go"},
    {"going", "go"},
    // common irregular verbs
    {"said", "say"}, {"says", "say"}, {"made", "make"}, {"saw", "see"},
    {"seen", "see"}, {"came", "come"}, {"took", "take"}, {"taken", "take"},
    {"knew", "know"}, {"known", "know"}, {"thought", "think"},
    {"told", "tell"}, {"found", "find"}, {"gave", "give"}, {"given", "give"},
    {"got", "get"}, {"gotten", "get"}, {"felt", "feel"}, {"left", "leave"},
    {"brought", "bring"}, {"began", "begin"}, {"begun", "begin"},
    {"kept", "keep"}, {"held", "hold"}, {"stood", "stand"}, {"heard", "hear"},
    {"meant", "mean"}, {"sat", "sit"}, {"spoke", "speak"},
    {"spoken", "speak"}, {"ran", "run"}, {"wrote", "write"},
    {"written", "write"}, {"became", "become"}, {"laid", "lay"},
    {"paid", "pay"}, {"met", "meet"}, {"led", "lead"}, {"sent", "send"},
    {"built", "build"}, {"spent", "spend"}, {"lost", "lose"},
    {"fell", "fall"}, {"fallen", "fall"}, {"rose", "rise"}, {"risen", "rise"},
    {"drove", "drive"}, {"driven", "drive"}, {"rode", "ride"},
    {"ridden", "ride"}, {"broke", "break"}, {"broken", "break"},
    {"chose", "choose"}, {"chosen", "choose"}, {"ate", "eat"},
    {"eaten", "eat"}, {"drank", "drink"}, {"drunk", "drink"},
    {"forgot", "forget"}, {"forgotten", "forget"}, {"wore", "wear"},
    {"worn", "wear"}, {"won", "win"}, {"threw", "throw"},
    {"thrown", "throw"}, {"grew", "grow"}, {"grown", "grow"},
    {"drew", "draw"}, {"drawn", "draw"}, {"flew", "fly"}, {"flown", "fly"},
    {"shown", "show"}, {"bought", "buy"}, {"caught", "catch"},
    {"taught", "teach"}, {"fought", "fight"}, {"sought", "seek"},
    {"sold", "sell"}, {"slept", "sleep"}, {"wept", "weep"},
    {"dealt", "deal"}, {"struck", "strike"}, {"hung", "hang"},
    {"shook", "shake"}, {"shaken", "shake"}, {"hid", "hide"},
    {"hidden", "hide"}, {"forgave", "forgive"}, {"forgiven", "forgive"},
    {"understood", "understand"}, {"fled", "flee"}, {"swore", "swear"},
    {"sworn", "swear"}, {"bore", "bear"}, {"borne", "bear"}, {"lit", "light"},
    {"dying", "die"}, {"died", "die"}, {"dies", "die"}, {"lying", "lie"},
    {"lied", "lie"}, {"lies", "lie"}, {"tying", "tie"}, {"tied", "tie"},
    {"used", "use"}, {"caused", "cause"}, {"pleased", "please"},
    {"raised", "raise"}, {"closed", "close"}, {"seized", "seize"},
    {"refused", "refuse"}, {"supposed", "suppose"}, {"proposed", "propose"},
    {"paused", "pause"}, {"amused", "amuse"}, {"surprised", "surprise"},
    {"promised", "promise"}, {"believed", "believe"},
    {"received", "receive"}, {"observed", "observe"},
    // left alone
    {"thing", "thing"}, {"nothing", "nothing"}, {"something", "something"},
    {"anything", "anything"}, {"everything", "everything"},
    {"morning", "morning"}, {"evening", "evening"}, {"during", "during"},
    {"king", "king"}, {"ring", "ring"}, {"wing", "wing"},
    {"spring", "spring"}, {"string", "string"}, {"ceiling", "ceiling"},
    {"shilling", "shilling"}, {"pudding", "pudding"},
    {"wedding", "wedding"}, {"hundred", "hundred"}, {"naked", "naked"},
    {"wicked", "wicked"}, {"sacred", "sacred"}, {"always", "always"},
    {"perhaps", "perhaps"}, {"news", "news"}, {"series", "series"},
    {"species", "species"}, {"mrs", "mrs"}, {"holmes", "holmes"},
    {"james", "james"}, {"charles", "charles"}, {"jones", "jones"},
    {"besides", "besides"}, {"sometimes", "sometimes"},
    {"towards", "towards"}, {"afterwards", "afterwards"},
    {"whereas", "whereas"}, {"alas", "alas"}, {"yes", "yes"},
};

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.ends_with(suffix);
}

bool is_vowel_at(std::string_view w, std::size_t i) {
  switch (w[i]) {
    case 'a': case 'e': case 'i': case 'o': case 'u':
      return true;
    case 'y':
      // y after a consonant acts as a vowel.
      return i > 0 && !is_vowel_at(w, i - 1);
    default:
      return false;
  }
}

bool is_consonant_at(std::string_view w, std::size_t i) {
  const char c = w[i];
  if (c < 'a' || c > 'z') return false;
  return !is_vowel_at(w, i);
}

bool has_vowel(std::string_view w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (is_vowel_at(w, i)) return true;
  }
  return false;
}

// Number of vowel-consonant sequences, Porter's measure.
int measure(std::string_view w) {
  int m = 0;
  bool prev_vowel = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const bool v = is_vowel_at(w, i);
    if (!v && prev_vowel) ++m;
    prev_vowel = v;
  }
  return m;
}

bool ends_cvc(std::string_view w) {
  const std::size_t n = w.size();
  if (n < 3) return false;
  if (!is_consonant_at(w, n - 3) || !is_vowel_at(w, n - 2) ||
      !is_consonant_at(w, n - 1)) {
    return false;
  }
  const char last = w[n - 1];
  return last != 'w' && last != 'x' && last != 'y';
}

// Repairs a stem left behind by stripping -ing / -ed.
std::string finish_verb_stem(std::string stem) {
  const std::size_t n = stem.size();
  if (n >= 2 && stem[n - 1] == stem[n - 2] && is_consonant_at(stem, n - 1)) {
    const char c = stem[n - 1];
    if (c != 'l' && c != 's' && c != 'z') stem.pop_back();
    return stem;
  }
  if (ends_with(stem, "at") || ends_with(stem, "bl") || ends_with(stem, "iz")) {
    return stem + "e";
  }
  if (measure(stem) == 1 && ends_cvc(stem)) return stem + "e";
  return stem;
}

bool has_no_apostrophe(std::string_view w) {
  for (char c : w) {
    if (c == '\'') return false;
  }
  return true;
}

// UTF-8 decoding helpers for the tokenizer. Input is already sanitized,
// but stray bytes are still treated as separators.
struct CodePoint {
  char32_t value;
  std::size_t length;
};

CodePoint decode(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  auto byte = [&](std::size_t k) {
    return static_cast<char32_t>(static_cast<unsigned char>(s[i + k]) & 0x3F);
  };
  if (b0 < 0x80) return {b0, 1};
  if ((b0 & 0xE0) == 0xC0 && i + 1 < s.size()) {
    return {(static_cast<char32_t>(b0 & 0x1F) << 6) | byte(1), 2};
  }
  if ((b0 & 0xF0) == 0xE0 && i + 2 < s.size()) {
    return {(static_cast<char32_t>(b0 & 0x0F) << 12) | (byte(1) << 6) | byte(2),
            3};
  }
  if ((b0 & 0xF8) == 0xF0 && i + 3 < s.size()) {
    return {(static_cast<char32_t>(b0 & 0x07) << 18) | (byte(1) << 12) |
                (byte(2) << 6) | byte(3),
            4};
  }
  return {0xFFFD, 1};
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Letters: ASCII plus Latin-1 Supplement and Latin Extended-A/B.
bool is_letter(char32_t cp) {
  if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return true;
  if (cp >= 0xC0 && cp <= 0x24F) return cp != 0xD7 && cp != 0xF7;
  return false;
}

bool is_apostrophe(char32_t cp) {
  return cp == '\'' || cp == 0x2018 || cp == 0x2019 || cp == 0x02BC;
}

bool is_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  if ((cp >= 0x100 && cp <= 0x137) || (cp >= 0x14A && cp <= 0x177)) {
    return cp | 1;
  }
  if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E)) {
    return (cp & 1) ? cp + 1 : cp;
  }
  if (cp == 0x178) return 0xFF;
  return cp;
}

enum class Kind { kLetter, kApostrophe, kDigit, kOther };

Kind classify(char32_t cp) {
  if (is_letter(cp)) return Kind::kLetter;
  if (is_apostrophe(cp)) return Kind::kApostrophe;
  if (is_digit(cp)) return Kind::kDigit;
  return Kind::kOther;
}

void flush_run(const std::vector<std::pair<Kind, char32_t>>& run,
               std::vector<std::string>& out) {
  for (const auto& [kind, cp] : run) {
    if (kind == Kind::kDigit) return;
  }
  std::string word;
  for (std::size_t k = 0; k < run.size(); ++k) {
    if (run[k].first == Kind::kLetter) {
      append_utf8(word, to_lower(run[k].second));
      continue;
    }
    const bool inner = k > 0 && k + 1 < run.size() &&
                       run[k - 1].first == Kind::kLetter &&
                       run[k + 1].first == Kind::kLetter;
    if (inner) {
      word.push_back('\'');
    } else if (!word.empty()) {
      out.push_back(std::move(word));
      word.clear();
    }
  }
  if (!word.empty()) out.push_back(std::move(word));
}

}  // namespace

std::string_view scenario_tag(Scenario s) {
  switch (s) {
    case Scenario::kOriginal: return "original";
    case Scenario::kNoStop: return "nostop";
    case Scenario::kLemma: return "lemma";
    case Scenario::kNoStopLemma: return "nostop-lemma";
  }
  return "original";
}

Scenario parse_scenario(std::string_view tag) {
  for (Scenario s : kAllScenarios) {
    if (scenario_tag(s) == tag) return s;
  }
  throw ConfigError(fmt::format(
      "unknown scenario '{}' (expected original, nostop, lemma or nostop-lemma)",
      tag));
}

const StopwordSet& StopwordSet::english() {
  static const StopwordSet set([] {
    std::unordered_set<std::string> words;
    for (const char* w : kEnglishStopwords) words.insert(w);
    return words;
  }());
  return set;
}

StopwordSet StopwordSet::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open stopword file: " + path.string());
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    for (const std::string& tok : tokenize(line)) words.insert(tok);
  }
  return StopwordSet(std::move(words));
}

RuleLemmatizer::RuleLemmatizer() {
  for (const auto& [surface, lemma] : kLexicon) lexicon_.emplace(surface, lemma);
}

void RuleLemmatizer::add_exception(std::string surface, std::string lemma) {
  lexicon_.insert_or_assign(std::move(surface), std::move(lemma));
}

void RuleLemmatizer::load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open lemma lexicon: " + path.string());
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw DataError(fmt::format("lemma lexicon line {}: expected surface<TAB>lemma",
                                  line_no));
    }
    add_exception(line.substr(0, tab), line.substr(tab + 1));
  }
}

std::string RuleLemmatizer::lemma(std::string_view token) const {
  if (const auto it = lexicon_.find(std::string(token)); it != lexicon_.end()) {
    return it->second;
  }
  std::string w(token);
  if (w.size() <= 3 || !has_no_apostrophe(w)) return w;
  for (unsigned char c : w) {
    // Only plain ASCII words go through the suffix rules.
    if (c >= 0x80) return w;
  }

  if (ends_with(w, "ies") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
  if (ends_with(w, "ied") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
  if (ends_with(w, "sses")) return w.substr(0, w.size() - 2);
  if (ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is")) return w;
  if (ends_with(w, "shes") || ends_with(w, "ches") || ends_with(w, "xes") ||
      ends_with(w, "zzes")) {
    return w.substr(0, w.size() - 2);
  }
  if (ends_with(w, "s")) return w.substr(0, w.size() - 1);

  if (ends_with(w, "ing")) {
    std::string stem = w.substr(0, w.size() - 3);
    if (stem.size() < 2 || !has_vowel(stem)) return w;
    return finish_verb_stem(std::move(stem));
  }
  if (ends_with(w, "ed")) {
    if (ends_with(w, "eed")) return w;
    std::string stem = w.substr(0, w.size() - 2);
    if (stem.size() < 2 || !has_vowel(stem)) return w;
    return finish_verb_stem(std::move(stem));
  }
  return w;
}

const RuleLemmatizer& default_lemmatizer() {
  static const RuleLemmatizer lemmatizer;
  return lemmatizer;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::vector<std::pair<Kind, char32_t>> run;
  std::size_t i = 0;
  while (i < text.size()) {
    const CodePoint cp = decode(text, i);
    i += cp.length;
    const Kind kind = classify(cp.value);
    if (kind == Kind::kOther) {
      if (!run.empty()) {
        flush_run(run, out);
        run.clear();
      }
      continue;
    }
    run.emplace_back(kind, cp.value);
  }
  if (!run.empty()) flush_run(run, out);
  return out;
}

std::vector<std::string> remove_stopwords(std::span<const std::string> tokens,
                                          const StopwordSet& stops) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const std::string& t : tokens) {
    if (!stops.contains(t)) out.push_back(t);
  }
  return out;
}

std::vector<std::string> lemmatize(std::span<const std::string> tokens,
                                   const Lemmatizer& lemmatizer) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const std::string& t : tokens) out.push_back(lemmatizer.lemma(t));
  return out;
}

TokenStream apply_scenario(std::string_view text, Scenario scenario,
                           const StopwordSet& stops,
                           const Lemmatizer& lemmatizer) {
  TokenStream stream;
  stream.scenario = scenario;
  std::vector<std::string> tokens = tokenize(text);
  switch (scenario) {
    case Scenario::kOriginal:
      break;
    case Scenario::kNoStop:
      tokens = remove_stopwords(tokens, stops);
      break;
    case Scenario::kLemma:
      tokens = lemmatize(tokens, lemmatizer);
      break;
    case Scenario::kNoStopLemma:
      tokens = lemmatize(remove_stopwords(tokens, stops), lemmatizer);
      break;
  }
  stream.tokens = std::move(tokens);
  return stream;
}

}  // namespace stylo
