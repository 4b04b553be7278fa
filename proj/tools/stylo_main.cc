#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "stylo/app/commands.h"
#include "stylo/error.h"

namespace {

using stylo::app::RunConfig;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

struct RawFlags {
  std::string scenarios;
  std::string features = "motifs";
  std::string classifiers = "all";
  std::string stopwords;
  std::string lexicon;
  std::string log_level = "info";
};

void add_shared_flags(CLI::App& cmd, RunConfig& config, RawFlags& raw) {
  cmd.add_option("--manifest", config.manifest, "Corpus manifest (author,title,year,path)")->required();
  cmd.add_option("--scenario", raw.scenarios,
                 "Comma-separated scenarios (original, nostop, lemma, nostop-lemma) or 'all'");
  cmd.add_option("--features", raw.features, "motifs, netstats or topwords")->capture_default_str();
  cmd.add_option("--classifiers", raw.classifiers,
                 "Comma-separated classifiers (knn, naive-bayes, decision-tree, linear-svm) or 'all'")
      ->capture_default_str();
  cmd.add_option("--folds", config.folds, "Cross-validation folds")->capture_default_str();
  cmd.add_option("--seed", config.seed, "Master random seed")->capture_default_str();
  cmd.add_option("--out", config.out, "Output directory")->capture_default_str();
  cmd.add_option("--trials", config.trials, "Shuffled-label trials")->capture_default_str();
  cmd.add_option("--stopwords", raw.stopwords, "Stopword list replacing the built-in one");
  cmd.add_option("--lexicon", raw.lexicon, "Extra lemma lexicon (surface<TAB>lemma)");
  cmd.add_option("--threads", config.threads, "Worker threads (0 = all cores)")->capture_default_str();
  cmd.add_option("--log-level", raw.log_level, "trace, debug, info, warn, error or off")->capture_default_str();
}

void finish_config(RunConfig& config, const RawFlags& raw) {
  config.scenarios.clear();
  if (!raw.scenarios.empty() && raw.scenarios != "all") {
    for (const auto& tag : split_list(raw.scenarios)) config.scenarios.push_back(stylo::parse_scenario(tag));
  } else if (raw.scenarios == "all") {
    config.scenarios.assign(stylo::kAllScenarios.begin(), stylo::kAllScenarios.end());
  }
  config.features = stylo::app::parse_feature_set(raw.features);
  config.classifiers.clear();
  if (raw.classifiers == "all") {
    config.classifiers.assign(std::begin(stylo::kAllClassifiers), std::end(stylo::kAllClassifiers));
  } else {
    for (const auto& tag : split_list(raw.classifiers)) config.classifiers.push_back(stylo::parse_classifier(tag));
  }
  if (!raw.stopwords.empty()) config.preprocess.stopwords = raw.stopwords;
  if (!raw.lexicon.empty()) config.preprocess.lexicon = raw.lexicon;
  const auto level = spdlog::level::from_str(raw.log_level);
  if (level == spdlog::level::off && raw.log_level != "off") {
    throw stylo::ConfigError("unknown log level '" + raw.log_level + "'");
  }
  spdlog::set_level(level);
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_st("stylo"));
  spdlog::set_pattern("[%l] %v");

  CLI::App app{"Authorship attribution from word co-occurrence networks"};
  app.require_subcommand(1);

  RunConfig config;
  RawFlags raw;
  using Command = stylo::app::CommandResult (*)(const RunConfig&);
  Command command = nullptr;

  auto add = [&](const char* name, const char* help, Command fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_shared_flags(*sub, config, raw);
    sub->callback([&command, fn] { command = fn; });
    return sub;
  };
  CLI::App* census = add("census", "Motif census per book", stylo::app::cmd_census);
  census->add_flag("--export-networks", config.export_networks, "Also write one edge list per book");
  add("metrics", "Undirected network statistics per book", stylo::app::cmd_metrics);
  add("classify", "Cross-validated accuracy per scenario and classifier", stylo::app::cmd_classify);
  add("baseline", "Accuracy with randomly drawn author labels", stylo::app::cmd_baseline);
  add("pca", "Two-component PCA coordinates and scatter plot", stylo::app::cmd_pca);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    finish_config(config, raw);
    const auto result = command(config);
    std::cout << result.summary;
    for (const auto& path : result.outputs) spdlog::info("wrote {}", path.string());
    return 0;
  } catch (const stylo::ConfigError& e) {
    spdlog::error("{}", e.what());
    return 1;
  } catch (const stylo::DataError& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 2;
  }
}
