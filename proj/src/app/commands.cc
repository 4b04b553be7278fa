#include "stylo/app/commands.h"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"
#include <spdlog/spdlog.h>

#include "stylo/app/provenance.h"
#include "stylo/app/svg.h"
#include "stylo/csv.h"
#include "stylo/error.h"
#include "stylo/metrics.h"
#include "stylo/motifs.h"
#include "stylo/network.h"
#include "stylo/parallel.h"
#include "stylo/pca.h"
#include "stylo/validation.h"

namespace stylo::app {

namespace {

namespace fs = std::filesystem;

std::vector<Scenario> scenarios_for(const RunConfig& config, bool all_by_default) {
  if (config.features == FeatureSet::kTopWords) return {Scenario::kOriginal};
  if (!config.scenarios.empty()) return config.scenarios;
  if (all_by_default) return {kAllScenarios.begin(), kAllScenarios.end()};
  return {Scenario::kOriginal};
}

std::vector<ClassifierSpec> classifier_specs(const RunConfig& config) {
  std::vector<ClassifierSpec> specs;
  for (auto kind : config.classifiers) {
    ClassifierSpec spec = ClassifierSpec::defaults(kind);
    spec.seed = config.seed;
    specs.push_back(spec);
  }
  return specs;
}

// Loading is shared by all commands.
struct Session {
  explicit Session(const RunConfig& config)
      : preprocessor(config.preprocess),
        corpus(load_corpus(load_manifest(config.manifest), config.threads)),
        threads(config.threads) {}

  ScenarioCorpus prepare(Scenario s) const { return prepare_scenario(corpus, s, preprocessor, threads); }

  Preprocessor preprocessor;
  LoadedCorpus corpus;
  unsigned threads;
};

Provenance base_provenance(const RunConfig& config, std::string command) {
  Provenance p;
  p.command = std::move(command);
  p.seed = config.seed;
  p.preprocess = config.preprocess;
  return p;
}

std::string real(double v) { return fmt::format("{}", v); }

std::string percent(double fraction) { return fmt::format("{:.1f}", 100.0 * fraction); }

std::string slug(std::string_view text) {
  std::string out;
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      out += static_cast<char>(std::tolower(c));
    } else if (!out.empty() && out.back() != '-') {
      out += '-';
    }
  }
  while (!out.empty() && out.back() == '-') out.pop_back();
  return out.empty() ? "book" : out.substr(0, 60);
}

// Rows of `cells` padded to a common width per column.
std::string text_table(const std::vector<std::vector<std::string>>& cells) {
  std::vector<std::size_t> width;
  for (const auto& row : cells) {
    width.resize(std::max(width.size(), row.size()), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) line += "  ";
      line += c == 0 ? fmt::format("{:<{}}", row[c], width[c]) : fmt::format("{:>{}}", row[c], width[c]);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + '\n';
  }
  return out;
}

std::string book_cell(std::string_view id) { return csv::escape(id); }

}  // namespace

void validate_config(const RunConfig& config) {
  if (config.folds < 2) throw ConfigError(fmt::format("--folds must be at least 2, got {}", config.folds));
  if (config.trials < 1) throw ConfigError(fmt::format("--trials must be at least 1, got {}", config.trials));
  if (config.classifiers.empty()) throw ConfigError("no classifiers selected");
  if (config.features == FeatureSet::kTopWords) {
    for (auto s : config.scenarios) {
      if (s != Scenario::kOriginal) {
        throw ConfigError("topwords features are defined on the original scenario only");
      }
    }
  }
}

CommandResult cmd_census(const RunConfig& config) {
  validate_config(config);
  Session session(config);
  CommandResult result;

  std::vector<std::vector<std::string>> summary{{"scenario", "books", "tokens", "mean nodes", "mean edges"}};
  Provenance table_prov = base_provenance(config, "census");
  for (Scenario s : scenarios_for(config, true)) {
    const ScenarioCorpus sc = session.prepare(s);
    table_prov.scenarios.push_back({s, sc.truncation_length});
    const std::size_t n = sc.streams.size();
    std::vector<MotifCensus> census(n);
    std::vector<std::array<std::size_t, 4>> sizes(n);
    std::vector<std::string> edge_lists(config.export_networks ? n : 0);
    parallel_for(n, config.threads, [&](std::size_t i) {
      const DirectedNetwork net = build_network(sc.streams[i].tokens);
      census[i] = triad_census(net, 1);
      sizes[i] = {net.node_count(), net.edge_count(), net.self_loop_count(),
                  to_undirected(net).edge_count()};
      if (config.export_networks) {
        std::ostringstream out;
        write_edge_list(out, net, scenario_tag(s));
        edge_lists[i] = out.str();
      }
    });

    Provenance prov = base_provenance(config, "census");
    prov.scenarios = {{s, sc.truncation_length}};
    for (auto& list : edge_lists) {
      list.insert(list.find('\n') + 1, "# provenance " + provenance_json(prov) + "\n");
    }

    std::string body = "book,scenario";
    for (const auto& name : motif_feature_names()) body += "," + name;
    body += '\n';
    std::string stats = "book,scenario,tokens,nodes,edges,self_loops,undirected_edges\n";
    double node_sum = 0, edge_sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& id = sc.streams[i].book_id;
      body += book_cell(id) + "," + std::string(scenario_tag(s));
      for (auto c : census[i].counts) body += fmt::format(",{}", c);
      body += '\n';
      stats += fmt::format("{},{},{},{},{},{},{}\n", book_cell(id), scenario_tag(s), sc.streams[i].tokens.size(),
                           sizes[i][0], sizes[i][1], sizes[i][2], sizes[i][3]);
      spdlog::info("{} [{}]: {} nodes, {} edges", id, scenario_tag(s), sizes[i][0], sizes[i][1]);
      node_sum += static_cast<double>(sizes[i][0]);
      edge_sum += static_cast<double>(sizes[i][1]);
    }
    const auto census_path = config.out / fmt::format("census_{}.csv", scenario_tag(s));
    const auto stats_path = config.out / fmt::format("network_stats_{}.csv", scenario_tag(s));
    write_csv_with_provenance(census_path, prov, body);
    write_csv_with_provenance(stats_path, prov, stats);
    std::vector<fs::path> written{census_path, stats_path};
    if (config.export_networks) {
      const auto dir = config.out / fmt::format("networks_{}", scenario_tag(s));
      for (std::size_t i = 0; i < n; ++i) {
        const auto path = dir / fmt::format("{:02}_{}.tsv", i + 1, slug(sc.streams[i].book_id));
        write_text_file(path, edge_lists[i]);
        written.push_back(path);
      }
    }
    append_provenance_log(config.out, prov, written);
    result.outputs.insert(result.outputs.end(), written.begin(), written.end());
    summary.push_back({std::string(scenario_tag(s)), std::to_string(n), std::to_string(sc.truncation_length),
                       fmt::format("{:.1f}", node_sum / n), fmt::format("{:.1f}", edge_sum / n)});
  }

  std::ostringstream table;
  write_motif_type_table(table);
  const auto table_path = config.out / "motif_types.csv";
  write_csv_with_provenance(table_path, table_prov, table.str());
  append_provenance_log(config.out, table_prov, {table_path});
  result.outputs.push_back(table_path);

  result.summary = text_table(summary);
  return result;
}

CommandResult cmd_metrics(const RunConfig& config) {
  validate_config(config);
  Session session(config);
  CommandResult result;
  std::vector<std::vector<std::string>> summary{{"scenario", "books", "tokens", "non-negative r"}};
  for (Scenario s : scenarios_for(config, true)) {
    const ScenarioCorpus sc = session.prepare(s);
    const std::size_t n = sc.streams.size();
    std::vector<NetworkMetrics> metrics(n);
    parallel_for(n, config.threads, [&](std::size_t i) {
      try {
        metrics[i] = compute_network_metrics(to_undirected(build_network(sc.streams[i].tokens)), 1);
      } catch (const DataError& e) {
        throw DataError(fmt::format("book '{}': {}", sc.streams[i].book_id, e.what()));
      }
    });

    Provenance prov = base_provenance(config, "metrics");
    prov.scenarios = {{s, sc.truncation_length}};
    std::string body = "book,scenario";
    for (const auto& name : network_feature_names()) body += "," + name;
    body += '\n';
    int non_negative = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& id = sc.streams[i].book_id;
      body += book_cell(id) + "," + std::string(scenario_tag(s));
      for (double v : network_features(metrics[i], id)) body += "," + real(v);
      body += '\n';
      if (metrics[i].assortativity && *metrics[i].assortativity >= 0.0) {
        ++non_negative;
        spdlog::warn("{} [{}]: assortativity {} is not negative", id, scenario_tag(s),
                     *metrics[i].assortativity);
      }
    }
    const auto path = config.out / fmt::format("metrics_{}.csv", scenario_tag(s));
    write_csv_with_provenance(path, prov, body);
    append_provenance_log(config.out, prov, {path});
    result.outputs.push_back(path);
    summary.push_back({std::string(scenario_tag(s)), std::to_string(n), std::to_string(sc.truncation_length),
                       std::to_string(non_negative)});
  }
  result.summary = text_table(summary);
  return result;
}

CommandResult cmd_classify(const RunConfig& config) {
  validate_config(config);
  Session session(config);
  const auto specs = classifier_specs(config);

  Provenance prov = base_provenance(config, "classify");
  prov.features = config.features;
  prov.classifiers = specs;
  prov.folds = config.folds;

  std::string body = "scenario";
  std::vector<std::vector<std::string>> summary{{"scenario"}};
  for (const auto& spec : specs) {
    body += "," + std::string(classifier_tag(spec.kind));
    summary[0].emplace_back(classifier_tag(spec.kind));
  }
  body += '\n';

  nlohmann::ordered_json report;
  report["runs"] = nlohmann::ordered_json::array();
  for (Scenario s : scenarios_for(config, true)) {
    const ScenarioCorpus sc = session.prepare(s);
    prov.scenarios.push_back({s, sc.truncation_length});
    const FeatureMatrix matrix = build_features(sc, config.features, config.threads);

    std::vector<CvResult> cv(specs.size());
    parallel_for(specs.size(), config.threads, [&](std::size_t c) {
      cv[c] = cross_validate(matrix, specs[c], config.folds, config.seed);
    });

    body += std::string(scenario_tag(s));
    summary.push_back({std::string(scenario_tag(s))});
    for (std::size_t c = 0; c < specs.size(); ++c) {
      body += "," + percent(cv[c].accuracy);
      summary.back().push_back(percent(cv[c].accuracy));

      nlohmann::ordered_json run;
      run["scenario"] = scenario_tag(s);
      run["truncation_length"] = sc.truncation_length;
      run["classifier"] = nlohmann::ordered_json::parse(specs[c].hyperparameters_json());
      run["accuracy"] = cv[c].accuracy;
      run["fold_accuracy"] = cv[c].fold_accuracy;
      run["stratified"] = cv[c].assignment.stratified;
      run["fold_of"] = cv[c].assignment.fold_of;
      run["labels"] = cv[c].labels;
      run["confusion"] = cv[c].confusion;
      run["dropped_features"] = cv[c].dropped_features;
      report["runs"].push_back(run);
    }
    body += '\n';
  }

  const auto tag = feature_set_tag(config.features);
  const auto results_path = config.out / fmt::format("results_{}.csv", tag);
  const auto report_path = config.out / fmt::format("report_{}.json", tag);
  write_csv_with_provenance(results_path, prov, body);
  nlohmann::ordered_json full;
  full["provenance"] = nlohmann::ordered_json::parse(provenance_json(prov));
  full["runs"] = report["runs"];
  write_text_file(report_path, full.dump(2) + "\n");
  append_provenance_log(config.out, prov, {results_path, report_path});

  CommandResult result;
  result.outputs = {results_path, report_path};
  result.summary = fmt::format("accuracy (%) with {} features, {}-fold cross-validation\n", tag, config.folds) +
                   text_table(summary);
  return result;
}

CommandResult cmd_baseline(const RunConfig& config) {
  validate_config(config);
  Session session(config);
  const auto specs = classifier_specs(config);
  CommandResult result;
  std::vector<std::vector<std::string>> summary{{"scenario", "classifier", "mean (%)", "chance (%)"}};
  for (Scenario s : scenarios_for(config, false)) {
    const ScenarioCorpus sc = session.prepare(s);
    const FeatureMatrix matrix = build_features(sc, config.features, config.threads);

    std::vector<BaselineResult> runs(specs.size());
    parallel_for(specs.size(), config.threads, [&](std::size_t c) {
      runs[c] = shuffled_label_baseline(matrix, specs[c], config.trials, config.folds, config.seed);
    });

    Provenance prov = base_provenance(config, "baseline");
    prov.scenarios = {{s, sc.truncation_length}};
    prov.features = config.features;
    prov.classifiers = specs;
    prov.folds = config.folds;
    prov.trials = config.trials;

    std::string body = "classifier,mean_accuracy,chance_level";
    for (int t = 1; t <= config.trials; ++t) body += fmt::format(",trial_{}", t);
    body += '\n';
    for (std::size_t c = 0; c < specs.size(); ++c) {
      body += fmt::format("{},{},{}", classifier_tag(specs[c].kind), percent(runs[c].mean_accuracy),
                          percent(runs[c].chance_level));
      for (double a : runs[c].trial_accuracy) body += "," + percent(a);
      body += '\n';
      summary.push_back({std::string(scenario_tag(s)), std::string(classifier_tag(specs[c].kind)),
                         percent(runs[c].mean_accuracy), percent(runs[c].chance_level)});
    }
    const auto path =
        config.out / fmt::format("baseline_{}_{}.csv", feature_set_tag(config.features), scenario_tag(s));
    write_csv_with_provenance(path, prov, body);
    append_provenance_log(config.out, prov, {path});
    result.outputs.push_back(path);
  }
  result.summary = fmt::format("shuffled-label accuracy over {} trials\n", config.trials) + text_table(summary);
  return result;
}

CommandResult cmd_pca(const RunConfig& config) {
  validate_config(config);
  Session session(config);
  CommandResult result;
  std::vector<std::vector<std::string>> summary{{"scenario", "books", "pc1 (%)", "pc2 (%)"}};
  for (Scenario s : scenarios_for(config, false)) {
    const ScenarioCorpus sc = session.prepare(s);
    const FeatureMatrix matrix = build_features(sc, config.features, config.threads);
    const PcaResult pca = pca_project(matrix, 2);

    double total = 0.0;
    for (double e : pca.eigenvalues) total += std::max(0.0, e);
    auto share = [&](int k) { return total > 0 ? std::max(0.0, pca.eigenvalues[k]) / total : 0.0; };

    Provenance prov = base_provenance(config, "pca");
    prov.scenarios = {{s, sc.truncation_length}};
    prov.features = config.features;

    std::string body = "book,author,pc1,pc2\n";
    std::vector<ScatterPoint> points;
    for (std::size_t i = 0; i < matrix.size(); ++i) {
      const auto& row = matrix.rows[i];
      body += fmt::format("{},{},{},{}\n", book_cell(row.book_id), csv::escape(row.author),
                          real(pca.coordinates[i][0]), real(pca.coordinates[i][1]));
      points.push_back({pca.coordinates[i][0], pca.coordinates[i][1], row.author, row.book_id});
    }
    const auto stem = fmt::format("pca_{}_{}", feature_set_tag(config.features), scenario_tag(s));
    const auto csv_path = config.out / (stem + ".csv");
    const auto svg_path = config.out / (stem + ".svg");
    write_csv_with_provenance(csv_path, prov, body);

    ScatterOptions options;
    options.title = fmt::format("PCA of {} features, scenario {}", feature_set_tag(config.features),
                                scenario_tag(s));
    options.x_label = fmt::format("PC1 ({:.1f}% of variance)", 100.0 * share(0));
    options.y_label = fmt::format("PC2 ({:.1f}% of variance)", 100.0 * share(1));
    options.metadata = provenance_json(prov);
    write_text_file(svg_path, render_scatter_svg(points, options));
    append_provenance_log(config.out, prov, {csv_path, svg_path});
    result.outputs.push_back(csv_path);
    result.outputs.push_back(svg_path);
    summary.push_back({std::string(scenario_tag(s)), std::to_string(matrix.size()), percent(share(0)),
                       percent(share(1))});
  }
  result.summary = text_table(summary);
  return result;
}

}  // namespace stylo::app
