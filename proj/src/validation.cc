#include "stylo/validation.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "stylo/error.h"
#include "stylo/random.h"

namespace stylo {

FoldAssignment assign_folds(std::span<const std::string> labels, int folds,
                            std::uint64_t seed) {
  const std::size_t n = labels.size();
  if (folds < 2) throw DataError("cross-validation needs at least 2 folds");
  if (static_cast<std::size_t>(folds) > n) {
    throw DataError(fmt::format("{} folds requested for only {} rows", folds, n));
  }
  FoldAssignment fa;
  fa.folds = folds;
  fa.fold_of.assign(n, 0);

  std::map<std::string, std::vector<std::size_t>> by_label;
  for (std::size_t i = 0; i < n; ++i) by_label[labels[i]].push_back(i);
  fa.stratified = std::all_of(by_label.begin(), by_label.end(), [&](const auto& kv) {
    return kv.second.size() >= static_cast<std::size_t>(folds);
  });

  Rng rng(seed);
  std::vector<std::size_t> order;
  order.reserve(n);
  if (fa.stratified) {
    for (auto& [label, rows] : by_label) {
      rng.shuffle(std::span<std::size_t>(rows));
      order.insert(order.end(), rows.begin(), rows.end());
    }
  } else {
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(std::span<std::size_t>(order));
  }
  // Dealing round-robin over the concatenated order keeps sizes within 1
  // and spreads each label across folds.
  for (std::size_t k = 0; k < n; ++k) {
    fa.fold_of[order[k]] = static_cast<int>(k % static_cast<std::size_t>(folds));
  }
  return fa;
}

CvResult cross_validate(const FeatureMatrix& matrix, const ClassifierSpec& spec,
                        int folds, std::uint64_t seed) {
  matrix.validate(/*require_two_per_label=*/false);
  const std::size_t n = matrix.size();
  const std::size_t dim = matrix.dimension();

  CvResult result;
  result.seed = seed;
  result.labels = matrix.label_set();
  const int label_count = static_cast<int>(result.labels.size());
  std::map<std::string, int> label_index;
  for (int i = 0; i < label_count; ++i) label_index.emplace(result.labels[i], i);
  std::vector<int> y(n);
  std::vector<std::string> row_labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = label_index.at(matrix.rows[i].author);
    row_labels[i] = matrix.rows[i].author;
  }
  result.assignment = assign_folds(row_labels, folds, seed);
  result.confusion.assign(label_count, std::vector<int>(label_count, 0));
  std::set<std::size_t> dropped;

  std::size_t correct_total = 0;
  for (int fold = 0; fold < folds; ++fold) {
    std::vector<std::size_t> train, test;
    for (std::size_t i = 0; i < n; ++i) {
      (result.assignment.fold_of[i] == fold ? test : train).push_back(i);
    }
    // Standardization fitted on the training rows only.
    std::vector<double> mean(dim, 0.0), sd(dim, 0.0);
    for (std::size_t i : train) {
      for (std::size_t f = 0; f < dim; ++f) mean[f] += matrix.rows[i].values[f];
    }
    for (double& m : mean) m /= static_cast<double>(train.size());
    for (std::size_t i : train) {
      for (std::size_t f = 0; f < dim; ++f) {
        const double d = matrix.rows[i].values[f] - mean[f];
        sd[f] += d * d;
      }
    }
    std::vector<std::size_t> kept;
    for (std::size_t f = 0; f < dim; ++f) {
      sd[f] = train.size() > 1 ? std::sqrt(sd[f] / static_cast<double>(train.size() - 1))
                               : 0.0;
      if (sd[f] > 1e-12 * std::max(1.0, std::abs(mean[f]))) {
        kept.push_back(f);
      } else {
        dropped.insert(f);
      }
    }
    auto scaled = [&](std::size_t i) {
      std::vector<double> v;
      v.reserve(kept.size());
      for (std::size_t f : kept) v.push_back((matrix.rows[i].values[f] - mean[f]) / sd[f]);
      return v;
    };

    TrainingSet data;
    data.label_count = label_count;
    for (std::size_t i : train) {
      data.rows.push_back(scaled(i));
      data.labels.push_back(y[i]);
    }
    ClassifierSpec fold_spec = spec;
    fold_spec.seed = derive_seed(spec.seed, static_cast<std::uint64_t>(fold));
    auto model = make_classifier(fold_spec);
    model->fit(data);

    std::size_t correct = 0;
    for (std::size_t i : test) {
      const int predicted = model->predict(scaled(i));
      ++result.confusion[y[i]][predicted];
      if (predicted == y[i]) ++correct;
    }
    correct_total += correct;
    result.fold_accuracy.push_back(test.empty() ? 0.0
                                                : static_cast<double>(correct) /
                                                      static_cast<double>(test.size()));
  }
  result.accuracy = static_cast<double>(correct_total) / static_cast<double>(n);
  for (std::size_t f : dropped) result.dropped_features.push_back(matrix.feature_names[f]);
  if (!result.dropped_features.empty()) {
    spdlog::debug("zero-variance columns dropped: {}",
                  fmt::join(result.dropped_features, ","));
  }
  return result;
}

BaselineResult shuffled_label_baseline(const FeatureMatrix& matrix,
                                       const ClassifierSpec& spec, int trials,
                                       int folds, std::uint64_t seed) {
  if (trials < 1) throw DataError("baseline needs at least 1 trial");
  const std::vector<std::string> labels = matrix.label_set();
  if (labels.size() < 2) throw DataError("baseline needs at least 2 labels");
  BaselineResult out;
  out.chance_level = 1.0 / static_cast<double>(labels.size());
  double sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(seed, 1000 + static_cast<std::uint64_t>(t));
    Rng rng(trial_seed);
    FeatureMatrix shuffled = matrix;
    // Redraw until at least two labels are present so the trial is a
    // classification problem.
    do {
      for (auto& row : shuffled.rows) row.author = labels[rng.index(labels.size())];
    } while (shuffled.label_set().size() < 2);
    const CvResult cv = cross_validate(shuffled, spec, folds, trial_seed);
    out.trial_accuracy.push_back(cv.accuracy);
    sum += cv.accuracy;
  }
  out.mean_accuracy = sum / trials;
  return out;
}

}  // namespace stylo
