#ifndef STYLO_METRICS_H_
#define STYLO_METRICS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stylo/network.h"

namespace stylo {

// Mean of neighbor degrees; 0 for isolated nodes.
std::vector<double> average_neighbor_degree(const UndirectedNetwork& net);

// Mean BFS distance to the other nodes of the same component; 0 for a node
// alone in its component.
std::vector<double> avg_shortest_path_length(const UndirectedNetwork& net,
                                             unsigned threads = 0);

// Unnormalized betweenness over unordered source/target pairs (Brandes'
// accumulation, halved).
std::vector<double> betweenness(const UndirectedNetwork& net, unsigned threads = 0);

// Local clustering coefficient; 0 for degree < 2.
std::vector<double> clustering_coefficient(const UndirectedNetwork& net);

// Pearson correlation of endpoint degrees over both orientations of every
// edge. nullopt when the degree variance is zero. Throws DataError for an
// edgeless network.
std::optional<double> assortativity(const UndirectedNetwork& net);

struct SummaryStats {
  double mean = 0.0;
  // Sample deviation (M - 1 denominator).
  double deviation = 0.0;
  // Mean cubed z-score using `deviation`; 0 when deviation is 0.
  double skewness = 0.0;
};

// Throws DataError for fewer than 2 values.
SummaryStats summarize(std::span<const double> values);

struct PathStats {
  std::vector<double> path_length;
  std::vector<double> betweenness;
  // Size of the largest connected component over node count.
  double giant_component_fraction = 0.0;
  // Nodes with no other node in their component.
  std::size_t isolated_nodes = 0;
};

// Path lengths and betweenness from a single set of all-sources BFS passes.
PathStats path_statistics(const UndirectedNetwork& net, unsigned threads = 0);

struct NetworkMetrics {
  SummaryStats adn;
  SummaryStats path_length;
  SummaryStats betweenness;
  SummaryStats clustering;
  std::optional<double> assortativity;
  double giant_component_fraction = 0.0;
  std::size_t isolated_nodes = 0;
};

NetworkMetrics compute_network_metrics(const UndirectedNetwork& net,
                                       unsigned threads = 0);

}  // namespace stylo

#endif  // STYLO_METRICS_H_
