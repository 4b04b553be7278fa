#ifndef STYLO_APP_COMMANDS_H_
#define STYLO_APP_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "stylo/app/pipeline.h"
#include "stylo/classifiers.h"
#include "stylo/preprocess.h"

namespace stylo::app {

struct RunConfig {
  std::filesystem::path manifest;
  // Empty: every scenario for census, metrics and classify; original for
  // baseline and pca. topwords always uses original.
  std::vector<Scenario> scenarios;
  FeatureSet features = FeatureSet::kMotifs;
  std::vector<ClassifierKind> classifiers{std::begin(kAllClassifiers), std::end(kAllClassifiers)};
  int folds = 10;
  std::uint64_t seed = 42;
  std::filesystem::path out = ".";
  int trials = 10;
  PreprocessOptions preprocess;
  unsigned threads = 0;
  // census only: also write one edge list per book.
  bool export_networks = false;
};

// Throws ConfigError for folds < 2, trials < 1, an empty classifier list or
// topwords with a scenario other than original.
void validate_config(const RunConfig& config);

struct CommandResult {
  std::vector<std::filesystem::path> outputs;
  // Human-readable table for stdout.
  std::string summary;
};

// census_<scenario>.csv, network_stats_<scenario>.csv and motif_types.csv.
CommandResult cmd_census(const RunConfig& config);
// metrics_<scenario>.csv.
CommandResult cmd_metrics(const RunConfig& config);
// results_<features>.csv (scenario rows, classifier columns, percentages)
// plus report_<features>.json with folds and confusion matrices.
CommandResult cmd_classify(const RunConfig& config);
// baseline_<features>_<scenario>.csv per scenario.
CommandResult cmd_baseline(const RunConfig& config);
// pca_<features>_<scenario>.csv and .svg per scenario.
CommandResult cmd_pca(const RunConfig& config);

}  // namespace stylo::app

#endif  // STYLO_APP_COMMANDS_H_
