#include "stylo/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "stylo/error.h"
#include "stylo/parallel.h"

namespace stylo {
namespace {

struct PathAccumulator {
  std::vector<double> distance_sum;
  std::vector<std::uint32_t> reached;
  std::vector<double> dependency;
};

}  // namespace

std::vector<double> average_neighbor_degree(const UndirectedNetwork& net) {
  std::vector<double> adn(net.node_count(), 0.0);
  for (NodeId v = 0; v < net.node_count(); ++v) {
    const auto& nb = net.neighbors(v);
    if (nb.empty()) continue;
    double sum = 0.0;
    for (NodeId w : nb) sum += static_cast<double>(net.degree(w));
    adn[v] = sum / static_cast<double>(nb.size());
  }
  return adn;
}

PathStats path_statistics(const UndirectedNetwork& net, unsigned threads) {
  const std::size_t n = net.node_count();
  const std::size_t chunk = std::max<std::size_t>(1, (n + 63) / 64);

  auto init = [n] {
    PathAccumulator acc;
    acc.distance_sum.assign(n, 0.0);
    acc.reached.assign(n, 0);
    acc.dependency.assign(n, 0.0);
    return acc;
  };

  auto body = [&net, n](std::size_t begin, std::size_t end, PathAccumulator& acc) {
    std::vector<std::int64_t> dist(n, -1);
    std::vector<double> sigma(n, 0.0);
    std::vector<double> delta(n, 0.0);
    std::vector<NodeId> order;
    order.reserve(n);
    for (std::size_t si = begin; si < end; ++si) {
      const NodeId s = static_cast<NodeId>(si);
      order.clear();
      dist[s] = 0;
      sigma[s] = 1.0;
      order.push_back(s);
      double dsum = 0.0;
      for (std::size_t head = 0; head < order.size(); ++head) {
        const NodeId v = order[head];
        for (NodeId w : net.neighbors(v)) {
          if (dist[w] < 0) {
            dist[w] = dist[v] + 1;
            dsum += static_cast<double>(dist[w]);
            order.push_back(w);
          }
          if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
        }
      }
      acc.distance_sum[s] = dsum;
      acc.reached[s] = static_cast<std::uint32_t>(order.size() - 1);

      for (std::size_t k = order.size(); k-- > 0;) {
        const NodeId w = order[k];
        for (NodeId v : net.neighbors(w)) {
          if (dist[v] == dist[w] - 1) {
            delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
          }
        }
        if (w != s) acc.dependency[w] += delta[w];
      }
      for (NodeId v : order) {
        dist[v] = -1;
        sigma[v] = 0.0;
        delta[v] = 0.0;
      }
    }
  };

  auto merge = [](PathAccumulator& into, const PathAccumulator& from) {
    for (std::size_t i = 0; i < into.dependency.size(); ++i) {
      into.distance_sum[i] += from.distance_sum[i];
      into.reached[i] += from.reached[i];
      into.dependency[i] += from.dependency[i];
    }
  };

  PathAccumulator total =
      parallel_reduce_chunks<PathAccumulator>(n, chunk, threads, init, body, merge);

  PathStats stats;
  stats.path_length.assign(n, 0.0);
  stats.betweenness.assign(n, 0.0);
  std::size_t largest = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const std::uint32_t r = total.reached[v];
    if (r == 0) {
      ++stats.isolated_nodes;
    } else {
      stats.path_length[v] = total.distance_sum[v] / static_cast<double>(r);
    }
    largest = std::max<std::size_t>(largest, r + 1);
    // Each unordered pair was accumulated from both endpoints.
    stats.betweenness[v] = total.dependency[v] / 2.0;
  }
  stats.giant_component_fraction =
      n == 0 ? 0.0 : static_cast<double>(largest) / static_cast<double>(n);
  return stats;
}

std::vector<double> avg_shortest_path_length(const UndirectedNetwork& net,
                                             unsigned threads) {
  return path_statistics(net, threads).path_length;
}

std::vector<double> betweenness(const UndirectedNetwork& net, unsigned threads) {
  return path_statistics(net, threads).betweenness;
}

std::vector<double> clustering_coefficient(const UndirectedNetwork& net) {
  const std::size_t n = net.node_count();
  std::vector<double> cc(n, 0.0);
  std::vector<NodeId> stamp(n, std::numeric_limits<NodeId>::max());
  for (NodeId v = 0; v < n; ++v) {
    const auto& nb = net.neighbors(v);
    const std::size_t k = nb.size();
    if (k < 2) continue;
    for (NodeId w : nb) stamp[w] = v;
    std::uint64_t links = 0;
    for (NodeId w : nb) {
      for (NodeId x : net.neighbors(w)) {
        if (x > w && stamp[x] == v) ++links;
      }
    }
    cc[v] = 2.0 * static_cast<double>(links) /
            (static_cast<double>(k) * static_cast<double>(k - 1));
  }
  return cc;
}

std::optional<double> assortativity(const UndirectedNetwork& net) {
  if (net.edge_count() == 0) {
    throw DataError("assortativity is undefined for an edgeless network");
  }
  // Both orientations of each edge: the two marginals coincide.
  double sum = 0.0, sum_sq = 0.0, sum_prod = 0.0, count = 0.0;
  for (NodeId v = 0; v < net.node_count(); ++v) {
    const double dv = static_cast<double>(net.degree(v));
    for (NodeId w : net.neighbors(v)) {
      const double dw = static_cast<double>(net.degree(w));
      sum += dv;
      sum_sq += dv * dv;
      sum_prod += dv * dw;
      count += 1.0;
    }
  }
  const double mean = sum / count;
  const double var = sum_sq / count - mean * mean;
  if (!(var > 1e-12 * std::max(1.0, mean * mean))) return std::nullopt;
  const double cov = sum_prod / count - mean * mean;
  return std::clamp(cov / var, -1.0, 1.0);
}

SummaryStats summarize(std::span<const double> values) {
  const std::size_t m = values.size();
  if (m < 2) throw DataError("summary statistics need at least 2 values");
  double sum = 0.0;
  for (double x : values) sum += x;
  SummaryStats s;
  s.mean = sum / static_cast<double>(m);
  if (std::all_of(values.begin(), values.end(),
                  [&](double x) { return x == values.front(); })) {
    s.mean = values.front();
    return s;
  }
  double sq = 0.0;
  for (double x : values) sq += (x - s.mean) * (x - s.mean);
  s.deviation = std::sqrt(sq / static_cast<double>(m - 1));
  if (s.deviation > 0.0) {
    double cube = 0.0;
    for (double x : values) {
      const double z = (x - s.mean) / s.deviation;
      cube += z * z * z;
    }
    s.skewness = cube / static_cast<double>(m);
  }
  return s;
}

NetworkMetrics compute_network_metrics(const UndirectedNetwork& net,
                                       unsigned threads) {
  const PathStats paths = path_statistics(net, threads);
  NetworkMetrics m;
  m.adn = summarize(average_neighbor_degree(net));
  m.path_length = summarize(paths.path_length);
  m.betweenness = summarize(paths.betweenness);
  m.clustering = summarize(clustering_coefficient(net));
  m.assortativity = assortativity(net);
  m.giant_component_fraction = paths.giant_component_fraction;
  m.isolated_nodes = paths.isolated_nodes;
  return m;
}

}  // namespace stylo
