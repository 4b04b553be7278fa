#include "stylo/pca.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "stylo/error.h"

namespace stylo {

PcaResult pca_project(const FeatureMatrix& matrix, int components) {
  const std::size_t n = matrix.size();
  if (n < 2) throw DataError("PCA needs at least 2 rows");
  const std::size_t dim = matrix.dimension();

  PcaResult out;
  std::vector<std::size_t> kept;
  std::vector<double> mean(dim, 0.0), sd(dim, 0.0);
  for (std::size_t f = 0; f < dim; ++f) {
    for (const auto& r : matrix.rows) mean[f] += r.values[f];
    mean[f] /= static_cast<double>(n);
    for (const auto& r : matrix.rows) sd[f] += (r.values[f] - mean[f]) * (r.values[f] - mean[f]);
    sd[f] = std::sqrt(sd[f] / static_cast<double>(n - 1));
    if (sd[f] > 1e-12 * std::max(1.0, std::abs(mean[f]))) {
      kept.push_back(f);
      out.kept_features.push_back(matrix.feature_names[f]);
    } else {
      out.dropped_features.push_back(matrix.feature_names[f]);
    }
  }
  if (!out.dropped_features.empty()) {
    spdlog::info("PCA: dropped zero-variance columns {}", fmt::join(out.dropped_features, ","));
  }
  if (components < 1 || static_cast<std::size_t>(components) > kept.size()) {
    throw DataError(fmt::format("cannot extract {} components from {} usable columns",
                                components, kept.size()));
  }

  const Eigen::Index rows = static_cast<Eigen::Index>(n);
  const Eigen::Index cols = static_cast<Eigen::Index>(kept.size());
  Eigen::MatrixXd z(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const std::size_t f = kept[static_cast<std::size_t>(c)];
      z(i, c) = (matrix.rows[static_cast<std::size_t>(i)].values[f] - mean[f]) / sd[f];
    }
  }
  const Eigen::MatrixXd cov = (z.transpose() * z) / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw DataError("eigendecomposition failed");

  // Eigen returns ascending eigenvalues.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(cols));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return solver.eigenvalues()(a) > solver.eigenvalues()(b);
  });
  for (Eigen::Index k : order) {
    out.eigenvalues.push_back(std::max(0.0, solver.eigenvalues()(k)));
  }

  Eigen::MatrixXd basis(cols, components);
  for (int c = 0; c < components; ++c) {
    Eigen::VectorXd v = solver.eigenvectors().col(order[static_cast<std::size_t>(c)]);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0) v = -v;
    basis.col(c) = v;
    out.components.emplace_back(v.data(), v.data() + v.size());
  }
  const Eigen::MatrixXd projected = z * basis;
  out.coordinates.assign(n, std::vector<double>(static_cast<std::size_t>(components)));
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (int c = 0; c < components; ++c) {
      out.coordinates[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] = projected(i, c);
    }
  }
  return out;
}

}  // namespace stylo
