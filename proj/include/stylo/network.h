#ifndef STYLO_NETWORK_H_
#define STYLO_NETWORK_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace stylo {

using NodeId = std::uint32_t;

// Unweighted directed word-adjacency graph. Node ids follow first occurrence
// in the token stream; adjacency lists are sorted and duplicate free.
// Self-loops (a word immediately repeated) are kept.
class DirectedNetwork {
 public:
  DirectedNetwork() = default;
  // Builds from an explicit edge set over `words.size()` nodes. Duplicate
  // edges collapse; out-of-range endpoints throw std::out_of_range.
  DirectedNetwork(std::vector<std::string> words,
                  std::span<const std::pair<NodeId, NodeId>> edges);

  std::size_t node_count() const { return words_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::size_t self_loop_count() const;

  const std::vector<NodeId>& successors(NodeId v) const { return out_[v]; }
  const std::vector<NodeId>& predecessors(NodeId v) const { return in_[v]; }
  bool has_edge(NodeId from, NodeId to) const;

  const std::string& word(NodeId v) const { return words_[v]; }
  // Number of nodes if absent.
  NodeId node_of(std::string_view word) const;

  // Every edge as (source, target), ordered by source then target.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<std::vector<NodeId>> out_;
  std::vector<std::vector<NodeId>> in_;
  std::size_t edge_count_ = 0;
};

// Symmetrized view without self-loops. Neighbor lists are sorted.
class UndirectedNetwork {
 public:
  UndirectedNetwork() = default;
  explicit UndirectedNetwork(std::vector<std::vector<NodeId>> adjacency);
  // Convenience for tests: nodes 0..n-1 and an edge list; duplicates and
  // self-loops dropped.
  static UndirectedNetwork from_edges(
      std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges);

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  const std::vector<NodeId>& neighbors(NodeId v) const { return adjacency_[v]; }
  std::size_t degree(NodeId v) const { return adjacency_[v].size(); }

 private:
  std::vector<std::vector<NodeId>> adjacency_;
  std::size_t edge_count_ = 0;
};

// One node per distinct token, one edge per distinct ordered pair of
// consecutive tokens. Throws DataError on an empty stream.
DirectedNetwork build_network(std::span<const std::string> tokens);

UndirectedNetwork to_undirected(const DirectedNetwork& net);

// `# nodes=<N> edges=<M> scenario=<tag>` then `source<TAB>target` lines.
void write_edge_list(std::ostream& out, const DirectedNetwork& net,
                     std::string_view scenario);

}  // namespace stylo

#endif  // STYLO_NETWORK_H_
