#include <cstdlib>
#include <map>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "stylo/app/commands.h"
#include "stylo/app/pipeline.h"
#include "stylo/app/provenance.h"
#include "stylo/app/svg.h"
#include "stylo/error.h"
#include "support/synthetic_corpus.h"
#include "support/temp_dir.h"

namespace fs = std::filesystem;
using stylo::app::FeatureSet;
using stylo::app::RunConfig;
using stylo::testing::read_file;
using stylo::testing::TempDir;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), dir).string()] = read_file(e.path());
  }
  return files;
}

RunConfig small_config(const fs::path& manifest, const fs::path& out) {
  RunConfig c;
  c.manifest = manifest;
  c.out = out;
  c.threads = 2;
  return c;
}

stylo::testing::SyntheticCorpusOptions small_corpus() {
  stylo::testing::SyntheticCorpusOptions o;
  o.authors = 3;
  o.books_per_author = 4;
  o.min_words = 1200;
  o.max_words = 1600;
  return o;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(STYLO_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("feature set tags") {
  for (auto s : {FeatureSet::kMotifs, FeatureSet::kNetStats, FeatureSet::kTopWords}) {
    CHECK(stylo::app::parse_feature_set(stylo::app::feature_set_tag(s)) == s);
  }
  CHECK_THROWS_AS(stylo::app::parse_feature_set("words"), stylo::ConfigError);
}

TEST_CASE("pipeline truncates every scenario to a common length") {
  TempDir dir;
  const auto manifest = stylo::testing::write_synthetic_corpus(dir.path(), small_corpus());
  const auto corpus = stylo::app::load_corpus(stylo::load_manifest(manifest), 2);
  REQUIRE(corpus.texts.size() == 12);
  CHECK(corpus.texts[0].find("Licensing") == std::string::npos);
  CHECK(corpus.texts[0].find("START OF") == std::string::npos);
  CHECK(corpus.book_ids[0] == "Book 1 by Author A");

  const stylo::app::Preprocessor pre;
  for (auto s : stylo::kAllScenarios) {
    const auto sc = stylo::app::prepare_scenario(corpus, s, pre, 3);
    std::size_t shortest = sc.full_lengths[0];
    for (auto l : sc.full_lengths) shortest = std::min(shortest, l);
    CHECK(sc.truncation_length == shortest);
    for (const auto& stream : sc.streams) CHECK(stream.tokens.size() == shortest);
    CHECK(sc.authors[0] == "Author A");
    const auto again = stylo::app::prepare_scenario(corpus, s, pre, 1);
    CHECK(again.streams[5].tokens == sc.streams[5].tokens);
  }
  const auto nostop = stylo::app::prepare_scenario(corpus, stylo::Scenario::kNoStop, pre);
  for (const auto& t : nostop.streams[0].tokens) CHECK_FALSE(stylo::StopwordSet::english().contains(t));

  const auto original = stylo::app::prepare_scenario(corpus, stylo::Scenario::kOriginal, pre);
  for (auto set : {FeatureSet::kMotifs, FeatureSet::kNetStats, FeatureSet::kTopWords}) {
    const auto m = stylo::app::build_features(original, set, 2);
    CHECK(m.size() == 12);
    CHECK_NOTHROW(m.validate());
    CHECK(m.rows[3].book_id == corpus.book_ids[3]);
  }
}

TEST_CASE("duplicate titles get distinct ids") {
  TempDir dir;
  dir.write("a.txt", "one two three");
  dir.write("b.txt", "four five six");
  dir.write("c.txt", "seven eight");
  dir.write("d.txt", "nine ten");
  dir.write("m.csv", "author,title,year,path\nX,Same,1,a.txt\nX,Other,1,b.txt\nY,Same,1,c.txt\nY,Y2,1,d.txt\n");
  const auto corpus = stylo::app::load_corpus(stylo::load_manifest(dir.path() / "m.csv"));
  CHECK(corpus.book_ids[0] == "Same (a.txt)");
  CHECK(corpus.book_ids[1] == "Other");
  CHECK(corpus.book_ids[2] == "Same (c.txt)");
}

TEST_CASE("errors name the offending book") {
  TempDir dir;
  dir.write("a.txt", "one two three");
  dir.write("b.txt", "1234 5678");
  dir.write("c.txt", "seven eight");
  dir.write("d.txt", "nine ten");
  dir.write("m.csv", "author,title,year,path\nX,Fine,1,a.txt\nX,Digits,1,b.txt\nY,C,1,c.txt\nY,D,1,d.txt\n");
  const auto corpus = stylo::app::load_corpus(stylo::load_manifest(dir.path() / "m.csv"));
  try {
    stylo::app::prepare_scenario(corpus, stylo::Scenario::kOriginal, stylo::app::Preprocessor{});
    FAIL("expected a data error");
  } catch (const stylo::DataError& e) {
    CHECK(std::string(e.what()).find("'Digits'") != std::string::npos);
  }
}

TEST_CASE("nice ticks") {
  CHECK(stylo::app::nice_ticks(0.0, 1.0) == std::vector<double>{0.0, 0.2, 0.4, 0.6000000000000001, 0.8, 1.0});
  const auto t = stylo::app::nice_ticks(-3.7, 12.2);
  CHECK(t.front() <= -3.7);
  CHECK(t.back() >= 12.2);
  CHECK(t[1] - t[0] == doctest::Approx(5.0));
  const auto flat = stylo::app::nice_ticks(2.0, 2.0);
  CHECK(flat.front() < 2.0);
  CHECK(flat.back() > 2.0);
}

TEST_CASE("scatter svg") {
  std::vector<stylo::app::ScatterPoint> pts{{0.5, 1.0, "Dickens", "Bleak House"},
                                            {-1.0, 2.0, "Austen", "Emma"},
                                            {2.0, -0.5, "Doyle & co", "<Hound>"}};
  stylo::app::ScatterOptions opt;
  opt.title = "t";
  opt.metadata = R"({"seed":42})";
  const auto svg = stylo::app::render_scatter_svg(pts, opt);
  CHECK(svg.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\""));
  CHECK(svg.find("<metadata>{&quot;seed&quot;:42}</metadata>") != std::string::npos);
  CHECK(svg.find("Doyle &amp; co") != std::string::npos);
  CHECK(svg.find("&lt;Hound&gt;") != std::string::npos);
  const auto count = [&](const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = svg.find(needle); pos != std::string::npos; pos = svg.find(needle, pos + 1)) ++n;
    return n;
  };
  CHECK(count("<title>") == 3);
  CHECK(stylo::app::render_scatter_svg(pts, opt) == svg);
}

TEST_CASE("config validation") {
  RunConfig c;
  c.folds = 1;
  CHECK_THROWS_AS(stylo::app::validate_config(c), stylo::ConfigError);
  c.folds = 10;
  c.trials = 0;
  CHECK_THROWS_AS(stylo::app::validate_config(c), stylo::ConfigError);
  c.trials = 1;
  c.features = FeatureSet::kTopWords;
  c.scenarios = {stylo::Scenario::kLemma};
  CHECK_THROWS_AS(stylo::app::validate_config(c), stylo::ConfigError);
  c.scenarios = {stylo::Scenario::kOriginal};
  CHECK_NOTHROW(stylo::app::validate_config(c));
  c.classifiers.clear();
  CHECK_THROWS_AS(stylo::app::validate_config(c), stylo::ConfigError);
}

TEST_CASE("commands write their files deterministically") {
  TempDir dir;
  const auto manifest = stylo::testing::write_synthetic_corpus(dir.path() / "corpus", small_corpus());

  auto run_all = [&](const fs::path& out, unsigned threads) {
    RunConfig c = small_config(manifest, out);
    c.threads = threads;
    c.trials = 2;
    c.export_networks = true;
    stylo::app::cmd_census(c);
    stylo::app::cmd_metrics(c);
    stylo::app::cmd_classify(c);
    c.features = FeatureSet::kTopWords;
    stylo::app::cmd_classify(c);
    c.features = FeatureSet::kMotifs;
    stylo::app::cmd_baseline(c);
    c.scenarios = {stylo::Scenario::kOriginal, stylo::Scenario::kNoStop};
    stylo::app::cmd_pca(c);
  };
  run_all(dir.path() / "a", 1);
  run_all(dir.path() / "b", 4);
  const auto a = snapshot(dir.path() / "a");
  const auto b = snapshot(dir.path() / "b");
  CHECK(a == b);

  for (const char* name : {"census_original.csv", "census_nostop-lemma.csv", "network_stats_lemma.csv",
                           "motif_types.csv", "metrics_nostop.csv", "results_motifs.csv", "report_motifs.json",
                           "results_topwords.csv", "baseline_motifs_original.csv", "pca_motifs_original.csv",
                           "pca_motifs_nostop.svg", "provenance.jsonl", "networks_original/01_book-1-by-author-a.tsv"}) {
    CAPTURE(name);
    CHECK(a.count(name) == 1);
  }

  const auto census = lines_of(a.at("census_lemma.csv"));
  REQUIRE(census.size() == 14);
  CHECK(census[0].starts_with("# provenance {\"tool\":\"stylo\""));
  CHECK(census[0].find("\"scenario\":\"lemma\"") != std::string::npos);
  CHECK(census[0].find("\"truncation_length\":") != std::string::npos);
  CHECK(census[1] == "book,scenario,m1,m2,m3,m4,m5,m6,m7,m8,m9,m10,m11,m12,m13");
  CHECK(census[2].starts_with("Book 1 by Author A,lemma,"));

  const auto metrics = lines_of(a.at("metrics_original.csv"));
  CHECK(metrics[1] ==
        "book,scenario,adn_mean,adn_dev,adn_skew,l_mean,l_dev,l_skew,b_mean,b_dev,b_skew,cc_mean,cc_dev,"
        "cc_skew,assortativity");
  CHECK(metrics.size() == 14);

  const auto results = lines_of(a.at("results_motifs.csv"));
  REQUIRE(results.size() == 6);
  CHECK(results[1] == "scenario,decision-tree,knn,linear-svm,naive-bayes");
  CHECK(results[2].starts_with("original,"));
  CHECK(results[5].starts_with("nostop-lemma,"));
  CHECK(std::regex_match(results[3], std::regex(R"(nostop(,\d+\.\d){4})")));
  CHECK(results[0].find("\"classifiers\":[{\"kind\":\"decision-tree\"") != std::string::npos);

  const auto topwords = lines_of(a.at("results_topwords.csv"));
  REQUIRE(topwords.size() == 3);
  CHECK(topwords[2].starts_with("original,"));

  const auto baseline = lines_of(a.at("baseline_motifs_original.csv"));
  CHECK(baseline[1] == "classifier,mean_accuracy,chance_level,trial_1,trial_2");
  CHECK(baseline[2].starts_with("decision-tree,"));
  CHECK(baseline[2].find(",33.3,") != std::string::npos);

  const auto pca = lines_of(a.at("pca_motifs_original.csv"));
  CHECK(pca[1] == "book,author,pc1,pc2");
  CHECK(pca.size() == 14);
  CHECK(a.at("pca_motifs_original.svg").find("<metadata>") != std::string::npos);

  const auto edges = lines_of(a.at("networks_original/01_book-1-by-author-a.tsv"));
  CHECK(edges[0].starts_with("# nodes="));
  CHECK(edges[0].ends_with(" scenario=original"));

  // Rerunning into the same directory leaves everything but the appended
  // provenance log unchanged.
  run_all(dir.path() / "a", 2);
  auto again = snapshot(dir.path() / "a");
  const auto log_before = lines_of(a.at("provenance.jsonl"));
  const auto log_after = lines_of(again.at("provenance.jsonl"));
  CHECK(log_after.size() == 2 * log_before.size());
  CHECK(std::equal(log_before.begin(), log_before.end(), log_after.begin() + log_before.size()));
  again.erase("provenance.jsonl");
  auto first = a;
  first.erase("provenance.jsonl");
  CHECK(again == first);
}

TEST_CASE("separable synthetic authors are recognised") {
  TempDir dir;
  const auto manifest = stylo::testing::write_synthetic_corpus(dir.path() / "corpus", small_corpus());
  RunConfig c = small_config(manifest, dir.path() / "out");
  c.folds = 4;
  c.features = FeatureSet::kTopWords;
  stylo::app::cmd_classify(c);
  const auto row = lines_of(read_file(dir.path() / "out" / "results_topwords.csv"))[2];
  int above = 0;
  std::stringstream cells(row.substr(row.find(',') + 1));
  std::string cell;
  while (std::getline(cells, cell, ',')) above += std::stod(cell) > 60.0;
  CHECK(above >= 3);
}

TEST_CASE("cli exit codes") {
  TempDir dir;
  const auto manifest = stylo::testing::write_synthetic_corpus(dir.path() / "corpus", small_corpus());
  const std::string m = "--manifest " + manifest.string();
  const std::string out = " --out " + (dir.path() / "out").string() + " --log-level off";
  CHECK(run_cli("census " + m + out + " --scenario original") == 0);
  CHECK(fs::exists(dir.path() / "out" / "census_original.csv"));
  CHECK_FALSE(fs::exists(dir.path() / "out" / "census_lemma.csv"));
  CHECK(run_cli("classify " + m + out + " --scenario lemma,nostop --classifiers knn --folds 3") == 0);
  CHECK(lines_of(read_file(dir.path() / "out" / "results_motifs.csv")).size() == 4);
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("") == 1);
  CHECK(run_cli("census" + out) == 1);
  CHECK(run_cli("census " + m + out + " --scenario bogus") == 1);
  CHECK(run_cli("classify " + m + out + " --classifiers svm") == 1);
  CHECK(run_cli("classify " + m + out + " --folds 1") == 1);
  CHECK(run_cli("census --manifest " + (dir.path() / "missing.csv").string() + out) == 1);
  CHECK(run_cli("classify " + m + out + " --folds 50") == 2);

  dir.write("bad/m.csv", "author,title,year,path\nA,T,1,gone.txt\n");
  CHECK(run_cli("census --manifest " + (dir.path() / "bad" / "m.csv").string() + out) == 2);
  dir.write("empty/m.csv", "author,title,year,path\n");
  CHECK(run_cli("census --manifest " + (dir.path() / "empty" / "m.csv").string() + out) == 2);
}
