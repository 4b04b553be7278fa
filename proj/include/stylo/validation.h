#ifndef STYLO_VALIDATION_H_
#define STYLO_VALIDATION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "stylo/classifiers.h"
#include "stylo/features.h"

namespace stylo {

struct FoldAssignment {
  // fold_of[row] in [0, folds).
  std::vector<int> fold_of;
  int folds = 0;
  // True when every label had at least `folds` rows and was dealt per label.
  bool stratified = false;

  friend bool operator==(const FoldAssignment&, const FoldAssignment&) = default;
};

// Seeded fold assignment; fold sizes differ by at most 1. Throws DataError
// when folds < 2 or folds > rows.
FoldAssignment assign_folds(std::span<const std::string> labels, int folds,
                            std::uint64_t seed);

struct CvResult {
  double accuracy = 0.0;
  std::vector<double> fold_accuracy;
  // labels[i] is the name of row/column i in `confusion`.
  std::vector<std::string> labels;
  // confusion[true][predicted].
  std::vector<std::vector<int>> confusion;
  std::uint64_t seed = 0;
  FoldAssignment assignment;
  // Columns dropped in at least one fold for having zero training variance.
  std::vector<std::string> dropped_features;

  friend bool operator==(const CvResult&, const CvResult&) = default;
};

// k-fold cross-validation with per-fold z-scoring fitted on the training
// rows; columns with zero training variance are dropped for that fold.
// Only requires 2 distinct labels (the shuffled baseline can leave a label
// with a single row).
CvResult cross_validate(const FeatureMatrix& matrix, const ClassifierSpec& spec,
                        int folds, std::uint64_t seed);

struct BaselineResult {
  double mean_accuracy = 0.0;
  std::vector<double> trial_accuracy;
  double chance_level = 0.0;
};

// Replaces each row's label with a uniform draw from the label set, runs
// cross-validation, and averages over `trials`. Throws DataError when
// trials < 1.
BaselineResult shuffled_label_baseline(const FeatureMatrix& matrix,
                                       const ClassifierSpec& spec, int trials,
                                       int folds, std::uint64_t seed);

}  // namespace stylo

#endif  // STYLO_VALIDATION_H_
