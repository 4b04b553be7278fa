#include "stylo/classifiers.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <tuple>

#include <boost/math/distributions/normal.hpp>
#include <fmt/format.h>
#include "json.hpp"

#include "stylo/error.h"
#include "stylo/random.h"

namespace stylo {
namespace {

int majority_label(std::span<const int> labels, int label_count) {
  std::vector<int> votes(label_count, 0);
  for (int y : labels) ++votes[y];
  return static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin());
}

void require_nonempty(const TrainingSet& data) {
  if (data.rows.empty() || data.label_count <= 0) {
    throw DataError("classifier trained on an empty training set");
  }
}

// ---------------------------------------------------------------- k-NN

class KnnClassifier : public Classifier {
 public:
  explicit KnnClassifier(int k) : k_(std::max(1, k)) {}

  void fit(const TrainingSet& data) override {
    require_nonempty(data);
    data_ = data;
  }

  int predict(std::span<const double> row) const override {
    // Distance ties at the cutoff go to the smaller label, then the earlier row.
    std::vector<std::tuple<double, int, std::size_t>> dist;
    dist.reserve(data_.rows.size());
    for (std::size_t i = 0; i < data_.rows.size(); ++i) {
      double d = 0.0;
      for (std::size_t f = 0; f < row.size(); ++f) {
        const double diff = row[f] - data_.rows[i][f];
        d += diff * diff;
      }
      dist.emplace_back(std::sqrt(d), data_.labels[i], i);
    }
    const std::size_t k = std::min<std::size_t>(k_, dist.size());
    std::partial_sort(dist.begin(), dist.begin() + k, dist.end());

    std::vector<int> votes(data_.label_count, 0);
    std::vector<double> dist_sum(data_.label_count, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      const auto& [d, y, index] = dist[i];
      ++votes[y];
      dist_sum[y] += d;
    }
    int best = -1;
    for (int y = 0; y < data_.label_count; ++y) {
      if (votes[y] == 0) continue;
      if (best < 0 || votes[y] > votes[best] ||
          (votes[y] == votes[best] &&
           dist_sum[y] / votes[y] < dist_sum[best] / votes[best])) {
        best = y;
      }
    }
    return best;
  }

 private:
  int k_;
  TrainingSet data_;
};

// ---------------------------------------------------------- naive Bayes

class GaussianNaiveBayes : public Classifier {
 public:
  explicit GaussianNaiveBayes(double variance_floor) : floor_(variance_floor) {}

  void fit(const TrainingSet& data) override {
    require_nonempty(data);
    const std::size_t dim = data.rows.front().size();
    const int labels = data.label_count;
    counts_.assign(labels, 0);
    mean_.assign(labels, std::vector<double>(dim, 0.0));
    var_.assign(labels, std::vector<double>(dim, 0.0));
    for (std::size_t i = 0; i < data.rows.size(); ++i) {
      const int y = data.labels[i];
      ++counts_[y];
      for (std::size_t f = 0; f < dim; ++f) mean_[y][f] += data.rows[i][f];
    }
    for (int y = 0; y < labels; ++y) {
      if (counts_[y] == 0) continue;
      for (double& m : mean_[y]) m /= counts_[y];
    }
    for (std::size_t i = 0; i < data.rows.size(); ++i) {
      const int y = data.labels[i];
      for (std::size_t f = 0; f < dim; ++f) {
        const double d = data.rows[i][f] - mean_[y][f];
        var_[y][f] += d * d;
      }
    }
    const double n = static_cast<double>(data.rows.size());
    log_prior_.assign(labels, 0.0);
    for (int y = 0; y < labels; ++y) {
      for (double& v : var_[y]) {
        v = counts_[y] > 1 ? v / (counts_[y] - 1) : 0.0;
        v = std::max(v, floor_);
      }
      // Laplace-smoothed class prior.
      log_prior_[y] = std::log((counts_[y] + 1.0) / (n + labels));
    }
  }

  int predict(std::span<const double> row) const override {
    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int y = 0; y < static_cast<int>(counts_.size()); ++y) {
      if (counts_[y] == 0) continue;
      double score = log_prior_[y];
      for (std::size_t f = 0; f < row.size(); ++f) {
        const double d = row[f] - mean_[y][f];
        score -= 0.5 * std::log(2.0 * M_PI * var_[y][f]) + d * d / (2.0 * var_[y][f]);
      }
      if (best < 0 || score > best_score) {
        best = y;
        best_score = score;
      }
    }
    return best;
  }

 private:
  double floor_;
  std::vector<int> counts_;
  std::vector<std::vector<double>> mean_;
  std::vector<std::vector<double>> var_;
  std::vector<double> log_prior_;
};

// ------------------------------------------------------- decision tree

double entropy(std::span<const double> counts) {
  double total = 0.0;
  for (double c : counts) total += c;
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (double c : counts) {
    if (c > 0.0) h -= c / total * std::log2(c / total);
  }
  return h;
}

// Upper confidence bound on extra errors at a leaf with `n` cases and `e`
// observed errors (the binomial approximation used by C4.5).
double added_errors(double n, double e, double confidence) {
  if (e < 1.0) {
    const double base = n * (1.0 - std::pow(confidence, 1.0 / n));
    if (e == 0.0) return base;
    return base + e * (added_errors(n, 1.0, confidence) - base);
  }
  if (e + 0.5 >= n) return std::max(n - e, 0.0);
  const double z =
      boost::math::quantile(boost::math::normal_distribution<double>(), 1.0 - confidence);
  const double f = (e + 0.5) / n;
  const double r = (f + z * z / (2.0 * n) +
                    z * std::sqrt(f / n - f * f / n + z * z / (4.0 * n * n))) /
                   (1.0 + z * z / n);
  return r * n - e;
}

class DecisionTree : public Classifier {
 public:
  DecisionTree(int min_leaf, double confidence)
      : min_leaf_(std::max(1, min_leaf)), confidence_(confidence) {}

  void fit(const TrainingSet& data) override {
    require_nonempty(data);
    data_ = &data;
    std::vector<std::size_t> idx(data.rows.size());
    std::iota(idx.begin(), idx.end(), 0);
    nodes_.clear();
    root_ = grow(idx);
    prune(root_);
    data_ = nullptr;
  }

  int predict(std::span<const double> row) const override {
    int at = root_;
    while (!nodes_[at].leaf) {
      const Node& nd = nodes_[at];
      at = row[nd.feature] <= nd.threshold ? nd.left : nd.right;
    }
    return nodes_[at].label;
  }

  std::size_t leaf_count() const {
    return static_cast<std::size_t>(std::count_if(
        nodes_.begin(), nodes_.end(), [](const Node& n) { return n.leaf; }));
  }

 private:
  struct Node {
    bool leaf = true;
    int label = 0;
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double cases = 0.0;
    // Training cases at this node not of `label`.
    double errors = 0.0;
  };

  struct Split {
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
    double ratio = 0.0;
  };

  int grow(const std::vector<std::size_t>& idx) {
    const int labels = data_->label_count;
    std::vector<double> counts(labels, 0.0);
    std::vector<int> ys;
    ys.reserve(idx.size());
    for (auto i : idx) {
      ++counts[data_->labels[i]];
      ys.push_back(data_->labels[i]);
    }
    Node node;
    node.label = majority_label(ys, labels);
    node.cases = static_cast<double>(idx.size());
    node.errors = node.cases - counts[node.label];
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(node);

    if (node.errors == 0.0 || idx.size() < 2 * static_cast<std::size_t>(min_leaf_)) {
      return id;
    }
    const Split split = choose_split(idx, counts);
    if (split.feature < 0) return id;

    std::vector<std::size_t> left, right;
    for (auto i : idx) {
      (data_->rows[i][split.feature] <= split.threshold ? left : right).push_back(i);
    }
    const int l = grow(left);
    const int r = grow(right);
    Node& self = nodes_[id];
    self.leaf = false;
    self.feature = split.feature;
    self.threshold = split.threshold;
    self.left = l;
    self.right = r;
    return id;
  }

  Split choose_split(const std::vector<std::size_t>& idx,
                     const std::vector<double>& counts) const {
    const int labels = data_->label_count;
    const double n = static_cast<double>(idx.size());
    const double base = entropy(counts);
    const std::size_t dim = data_->rows.front().size();

    std::vector<Split> candidates;
    std::vector<std::size_t> order(idx);
    for (std::size_t f = 0; f < dim; ++f) {
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double va = data_->rows[a][f], vb = data_->rows[b][f];
        return va < vb || (va == vb && a < b);
      });
      std::vector<double> left(labels, 0.0), right(counts);
      Split best;
      best.feature = static_cast<int>(f);
      bool found = false;
      int possible_splits = 0;
      for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        const int y = data_->labels[order[k]];
        ++left[y];
        --right[y];
        const double v = data_->rows[order[k]][f];
        const double next = data_->rows[order[k + 1]][f];
        if (v == next) continue;
        const double nl = static_cast<double>(k + 1);
        const double nr = n - nl;
        if (nl < min_leaf_ || nr < min_leaf_) continue;
        ++possible_splits;
        const double gain = base - (nl / n) * entropy(left) - (nr / n) * entropy(right);
        if (!found || gain > best.gain) {
          found = true;
          best.gain = gain;
          best.threshold = v + (next - v) / 2.0;
          // Keep the threshold strictly below `next` despite rounding.
          if (!(best.threshold < next)) best.threshold = v;
          const double split_info = entropy(std::vector<double>{nl, nr});
          best.ratio = split_info;  // finished below
        }
      }
      if (!found) continue;
      // Penalty for choosing among many thresholds on a numeric attribute.
      best.gain -= std::log2(static_cast<double>(possible_splits)) / n;
      if (best.gain <= 0.0) continue;
      best.ratio = best.gain / best.ratio;
      candidates.push_back(best);
    }
    if (candidates.empty()) return {};

    double avg_gain = 0.0;
    for (const auto& c : candidates) avg_gain += c.gain;
    avg_gain /= static_cast<double>(candidates.size());

    Split chosen;
    for (const auto& c : candidates) {
      if (c.gain + 1e-3 < avg_gain) continue;
      if (chosen.feature < 0 || c.ratio > chosen.ratio) chosen = c;
    }
    return chosen;
  }

  // Returns the estimated error count of the (possibly pruned) subtree.
  double prune(int id) {
    Node& node = nodes_[id];
    const double as_leaf =
        node.errors + added_errors(node.cases, node.errors, confidence_);
    if (node.leaf) return as_leaf;
    const int l = node.left, r = node.right;
    const double subtree = prune(l) + prune(r);
    Node& again = nodes_[id];
    if (as_leaf <= subtree + 0.1) {
      again.leaf = true;
      return as_leaf;
    }
    return subtree;
  }

  int min_leaf_;
  double confidence_;
  const TrainingSet* data_ = nullptr;
  std::vector<Node> nodes_;
  int root_ = 0;
};

// ----------------------------------------------------------- linear SVM

// One-vs-one linear SVMs trained with the Pegasos subgradient method on the
// regularized hinge loss; the bias is an extra constant feature.
class LinearSvm : public Classifier {
 public:
  LinearSvm(double penalty, int epochs, std::uint64_t seed)
      : penalty_(penalty), epochs_(std::max(1, epochs)), seed_(seed) {}

  void fit(const TrainingSet& data) override {
    require_nonempty(data);
    const std::size_t dim = data.rows.front().size();
    label_count_ = data.label_count;
    models_.clear();
    std::vector<bool> present(label_count_, false);
    for (int y : data.labels) present[y] = true;
    present_ = present;

    std::uint64_t pair_index = 0;
    for (int a = 0; a < label_count_; ++a) {
      for (int b = a + 1; b < label_count_; ++b, ++pair_index) {
        if (!present[a] || !present[b]) continue;
        std::vector<std::size_t> subset;
        for (std::size_t i = 0; i < data.rows.size(); ++i) {
          if (data.labels[i] == a || data.labels[i] == b) subset.push_back(i);
        }
        Model m;
        m.positive = a;
        m.negative = b;
        m.w.assign(dim + 1, 0.0);
        const double lambda = 1.0 / (penalty_ * static_cast<double>(subset.size()));
        Rng rng(derive_seed(seed_, pair_index));
        std::uint64_t t = 0;
        for (int epoch = 0; epoch < epochs_; ++epoch) {
          rng.shuffle(std::span<std::size_t>(subset));
          for (std::size_t i : subset) {
            ++t;
            const double eta = 1.0 / (lambda * static_cast<double>(t));
            const double y = data.labels[i] == a ? 1.0 : -1.0;
            const auto& x = data.rows[i];
            double margin = m.w[dim];
            for (std::size_t f = 0; f < dim; ++f) margin += m.w[f] * x[f];
            const double shrink = 1.0 - eta * lambda;
            for (double& wf : m.w) wf *= shrink;
            if (y * margin < 1.0) {
              for (std::size_t f = 0; f < dim; ++f) m.w[f] += eta * y * x[f];
              m.w[dim] += eta * y;
            }
          }
        }
        models_.push_back(std::move(m));
      }
    }
  }

  int predict(std::span<const double> row) const override {
    std::vector<int> votes(label_count_, 0);
    for (const Model& m : models_) {
      double s = m.w.back();
      for (std::size_t f = 0; f < row.size(); ++f) s += m.w[f] * row[f];
      ++votes[s >= 0.0 ? m.positive : m.negative];
    }
    int best = -1;
    for (int y = 0; y < label_count_; ++y) {
      if (!present_[y]) continue;
      if (best < 0 || votes[y] > votes[best]) best = y;
    }
    return best;
  }

 private:
  struct Model {
    int positive = 0;
    int negative = 0;
    std::vector<double> w;
  };

  double penalty_;
  int epochs_;
  std::uint64_t seed_;
  int label_count_ = 0;
  std::vector<bool> present_;
  std::vector<Model> models_;
};

}  // namespace

std::string_view classifier_tag(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::kKnn: return "knn";
    case ClassifierKind::kNaiveBayes: return "naive-bayes";
    case ClassifierKind::kDecisionTree: return "decision-tree";
    case ClassifierKind::kLinearSvm: return "linear-svm";
  }
  return "knn";
}

ClassifierKind parse_classifier(std::string_view tag) {
  for (ClassifierKind k : kAllClassifiers) {
    if (classifier_tag(k) == tag) return k;
  }
  throw ConfigError(fmt::format(
      "unknown classifier '{}' (expected knn, naive-bayes, decision-tree or linear-svm)",
      tag));
}

ClassifierSpec ClassifierSpec::defaults(ClassifierKind kind) {
  ClassifierSpec spec;
  spec.kind = kind;
  return spec;
}

std::string ClassifierSpec::hyperparameters_json() const {
  nlohmann::ordered_json j;
  j["kind"] = classifier_tag(kind);
  switch (kind) {
    case ClassifierKind::kKnn:
      j["k"] = k;
      break;
    case ClassifierKind::kNaiveBayes:
      j["variance_floor"] = variance_floor;
      break;
    case ClassifierKind::kDecisionTree:
      j["min_leaf"] = min_leaf;
      j["pruning_confidence"] = pruning_confidence;
      break;
    case ClassifierKind::kLinearSvm:
      j["penalty"] = penalty;
      j["epochs"] = epochs;
      j["learning_rate"] = "1/(lambda*t)";
      j["seed"] = seed;
      break;
  }
  return j.dump();
}

std::unique_ptr<Classifier> make_classifier(const ClassifierSpec& spec) {
  switch (spec.kind) {
    case ClassifierKind::kKnn:
      return std::make_unique<KnnClassifier>(spec.k);
    case ClassifierKind::kNaiveBayes:
      return std::make_unique<GaussianNaiveBayes>(spec.variance_floor);
    case ClassifierKind::kDecisionTree:
      return std::make_unique<DecisionTree>(spec.min_leaf, spec.pruning_confidence);
    case ClassifierKind::kLinearSvm:
      return std::make_unique<LinearSvm>(spec.penalty, spec.epochs, spec.seed);
  }
  throw ConfigError("unknown classifier kind");
}

std::vector<std::string> classify(const ClassifierSpec& spec,
                                  const FeatureMatrix& train,
                                  std::span<const std::vector<double>> test_rows) {
  if (train.rows.empty()) throw DataError("empty training matrix");
  const std::vector<std::string> labels = train.label_set();
  std::map<std::string, int> label_index;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    label_index.emplace(labels[i], static_cast<int>(i));
  }
  TrainingSet data;
  data.label_count = static_cast<int>(labels.size());
  for (const auto& r : train.rows) {
    if (r.author.empty()) throw DataError("training row with empty label");
    data.rows.push_back(r.values);
    data.labels.push_back(label_index.at(r.author));
  }
  auto model = make_classifier(spec);
  model->fit(data);
  std::vector<std::string> out;
  out.reserve(test_rows.size());
  for (const auto& row : test_rows) out.push_back(labels[model->predict(row)]);
  return out;
}

}  // namespace stylo
