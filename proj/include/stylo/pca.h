#ifndef STYLO_PCA_H_
#define STYLO_PCA_H_

#include <string>
#include <vector>

#include "stylo/features.h"

namespace stylo {

struct PcaResult {
  // coordinates[row][component].
  std::vector<std::vector<double>> coordinates;
  // Descending; all of them, not only the projected ones.
  std::vector<double> eigenvalues;
  // components[c] is a unit vector over `kept_features`.
  std::vector<std::vector<double>> components;
  std::vector<std::string> kept_features;
  std::vector<std::string> dropped_features;
};

// PCA on z-scored columns (sample deviation); zero-variance columns are
// dropped first. Each component's largest-magnitude loading is positive.
// Throws DataError for fewer than 2 rows or more components than kept
// columns.
PcaResult pca_project(const FeatureMatrix& matrix, int components = 2);

}  // namespace stylo

#endif  // STYLO_PCA_H_
