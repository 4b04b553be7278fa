#ifndef STYLO_CLASSIFIERS_H_
#define STYLO_CLASSIFIERS_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stylo/features.h"

namespace stylo {

enum class ClassifierKind { kKnn, kNaiveBayes, kDecisionTree, kLinearSvm };

inline constexpr ClassifierKind kAllClassifiers[] = {
    ClassifierKind::kDecisionTree, ClassifierKind::kKnn,
    ClassifierKind::kLinearSvm, ClassifierKind::kNaiveBayes};

// "knn", "naive-bayes", "decision-tree", "linear-svm".
std::string_view classifier_tag(ClassifierKind kind);
ClassifierKind parse_classifier(std::string_view tag);

struct ClassifierSpec {
  ClassifierKind kind = ClassifierKind::kKnn;
  // knn
  int k = 1;
  // naive-bayes
  double variance_floor = 1e-9;
  // decision-tree
  int min_leaf = 2;
  double pruning_confidence = 0.25;
  // linear-svm
  double penalty = 1.0;
  int epochs = 200;
  std::uint64_t seed = 42;

  static ClassifierSpec defaults(ClassifierKind kind);
  // e.g. `{"kind":"knn","k":1}`; only the fields the kind uses.
  std::string hyperparameters_json() const;
};

// Training data with labels as indices into a sorted label list, so that
// "smallest index" is the lexicographic tie-break.
struct TrainingSet {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  int label_count = 0;
};

class Classifier {
 public:
  virtual ~Classifier() = default;
  // Throws DataError for an empty training set.
  virtual void fit(const TrainingSet& data) = 0;
  virtual int predict(std::span<const double> row) const = 0;
};

std::unique_ptr<Classifier> make_classifier(const ClassifierSpec& spec);

// Trains on `train` and predicts author labels for `test_rows` (raw
// features, no scaling).
std::vector<std::string> classify(const ClassifierSpec& spec,
                                  const FeatureMatrix& train,
                                  std::span<const std::vector<double>> test_rows);

}  // namespace stylo

#endif  // STYLO_CLASSIFIERS_H_
