#include "stylo/app/provenance.h"

#include <fstream>

#include <fmt/format.h>
#include "json.hpp"

#include "stylo/error.h"

namespace stylo::app {

namespace {

nlohmann::ordered_json to_json(const Provenance& p) {
  nlohmann::ordered_json j;
  j["tool"] = "stylo";
  j["version"] = kToolVersion;
  j["defaults_version"] = kDefaultsVersion;
  j["command"] = p.command;
  j["seed"] = p.seed;
  if (p.scenarios.size() == 1) {
    j["scenario"] = scenario_tag(p.scenarios[0].scenario);
    j["truncation_length"] = p.scenarios[0].truncation_length;
  } else {
    auto tags = nlohmann::ordered_json::array();
    auto lengths = nlohmann::ordered_json::array();
    for (const auto& s : p.scenarios) {
      tags.push_back(scenario_tag(s.scenario));
      lengths.push_back(s.truncation_length);
    }
    j["scenario"] = tags;
    j["truncation_length"] = lengths;
  }
  if (p.features) j["features"] = feature_set_tag(*p.features);
  if (!p.classifiers.empty()) {
    auto list = nlohmann::ordered_json::array();
    for (const auto& c : p.classifiers) {
      list.push_back(nlohmann::ordered_json::parse(c.hyperparameters_json()));
    }
    j["classifiers"] = list;
  }
  if (p.folds > 0) j["folds"] = p.folds;
  if (p.trials > 0) j["trials"] = p.trials;
  j["stopwords"] = p.preprocess.stopwords ? p.preprocess.stopwords->string() : "builtin";
  j["lexicon"] = p.preprocess.lexicon ? p.preprocess.lexicon->string() : "builtin";
  return j;
}

}  // namespace

std::string provenance_json(const Provenance& p) { return to_json(p).dump(); }

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  out.close();
  if (!out) throw ConfigError(fmt::format("cannot write '{}'", path.string()));
}

void write_csv_with_provenance(const std::filesystem::path& path, const Provenance& p,
                               std::string_view csv_body) {
  write_text_file(path, "# provenance " + provenance_json(p) + "\n" + std::string(csv_body));
}

void append_provenance_log(const std::filesystem::path& dir, const Provenance& p,
                           const std::vector<std::filesystem::path>& outputs) {
  auto j = to_json(p);
  auto files = nlohmann::ordered_json::array();
  for (const auto& f : outputs) files.push_back(f.lexically_relative(dir).generic_string());
  j["outputs"] = files;
  const auto path = dir / "provenance.jsonl";
  std::ofstream out(path, std::ios::binary | std::ios::app);
  out << j.dump() << '\n';
  out.close();
  if (!out) throw ConfigError(fmt::format("cannot append to '{}'", path.string()));
}

}  // namespace stylo::app
