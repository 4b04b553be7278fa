#ifndef STYLO_APP_PROVENANCE_H_
#define STYLO_APP_PROVENANCE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "stylo/app/pipeline.h"
#include "stylo/classifiers.h"
#include "stylo/preprocess.h"

namespace stylo::app {

inline constexpr std::string_view kToolVersion = "1.0.0";
// Bumped whenever a classifier or preprocessing default changes.
inline constexpr int kDefaultsVersion = 1;

struct ScenarioTruncation {
  Scenario scenario = Scenario::kOriginal;
  std::size_t truncation_length = 0;
};

struct Provenance {
  std::string command;
  std::uint64_t seed = 0;
  std::vector<ScenarioTruncation> scenarios;
  std::optional<FeatureSet> features;
  std::vector<ClassifierSpec> classifiers;
  int folds = 0;
  int trials = 0;
  PreprocessOptions preprocess;
};

// Single-line JSON. `scenario` and `truncation_length` are scalars for one
// scenario and arrays otherwise. Contains nothing run-specific beyond the
// configuration, so reruns produce the same record.
std::string provenance_json(const Provenance& p);

// Writes `content` to `path`, creating parent directories. Throws
// ConfigError when the file cannot be written.
void write_text_file(const std::filesystem::path& path, std::string_view content);

// CSV body preceded by a `# provenance <json>` line.
void write_csv_with_provenance(const std::filesystem::path& path, const Provenance& p,
                               std::string_view csv_body);

// Appends one line to `<dir>/provenance.jsonl` naming the files written.
void append_provenance_log(const std::filesystem::path& dir, const Provenance& p,
                           const std::vector<std::filesystem::path>& outputs);

}  // namespace stylo::app

#endif  // STYLO_APP_PROVENANCE_H_
