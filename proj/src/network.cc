#include "stylo/network.h"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

#include "stylo/error.h"

namespace stylo {
namespace {

void sort_unique(std::vector<NodeId>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

DirectedNetwork::DirectedNetwork(std::vector<std::string> words,
                                 std::span<const std::pair<NodeId, NodeId>> edges)
    : words_(std::move(words)), out_(words_.size()), in_(words_.size()) {
  index_.reserve(words_.size());
  for (NodeId v = 0; v < words_.size(); ++v) index_.emplace(words_[v], v);
  for (const auto& [from, to] : edges) {
    if (from >= words_.size() || to >= words_.size()) {
      throw std::out_of_range("edge endpoint outside node range");
    }
    out_[from].push_back(to);
    in_[to].push_back(from);
  }
  for (auto& list : out_) {
    sort_unique(list);
    edge_count_ += list.size();
  }
  for (auto& list : in_) sort_unique(list);
}

std::size_t DirectedNetwork::self_loop_count() const {
  std::size_t loops = 0;
  for (NodeId v = 0; v < out_.size(); ++v) {
    if (has_edge(v, v)) ++loops;
  }
  return loops;
}

bool DirectedNetwork::has_edge(NodeId from, NodeId to) const {
  const auto& succ = out_[from];
  return std::binary_search(succ.begin(), succ.end(), to);
}

NodeId DirectedNetwork::node_of(std::string_view word) const {
  const auto it = index_.find(std::string(word));
  return it == index_.end() ? static_cast<NodeId>(words_.size()) : it->second;
}

std::vector<std::pair<NodeId, NodeId>> DirectedNetwork::edges() const {
  std::vector<std::pair<NodeId, NodeId>> result;
  result.reserve(edge_count_);
  for (NodeId v = 0; v < out_.size(); ++v) {
    for (NodeId w : out_[v]) result.emplace_back(v, w);
  }
  return result;
}

UndirectedNetwork::UndirectedNetwork(std::vector<std::vector<NodeId>> adjacency)
    : adjacency_(std::move(adjacency)) {
  std::size_t endpoints = 0;
  for (const auto& list : adjacency_) endpoints += list.size();
  edge_count_ = endpoints / 2;
}

UndirectedNetwork UndirectedNetwork::from_edges(
    std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges) {
  std::vector<std::vector<NodeId>> adj(n);
  for (const auto& [a, b] : edges) {
    if (a >= n || b >= n) throw std::out_of_range("edge endpoint outside node range");
    if (a == b) continue;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& list : adj) sort_unique(list);
  return UndirectedNetwork(std::move(adj));
}

DirectedNetwork build_network(std::span<const std::string> tokens) {
  if (tokens.empty()) throw DataError("cannot build a network from an empty stream");
  std::vector<std::string> words;
  std::unordered_map<std::string_view, NodeId> index;
  std::vector<NodeId> sequence;
  sequence.reserve(tokens.size());
  for (const std::string& t : tokens) {
    auto [it, inserted] = index.try_emplace(t, static_cast<NodeId>(words.size()));
    if (inserted) words.push_back(t);
    sequence.push_back(it->second);
  }
  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(sequence.size());
  for (std::size_t k = 0; k + 1 < sequence.size(); ++k) {
    pairs.emplace_back(sequence[k], sequence[k + 1]);
  }
  return DirectedNetwork(std::move(words), pairs);
}

UndirectedNetwork to_undirected(const DirectedNetwork& net) {
  std::vector<std::vector<NodeId>> adj(net.node_count());
  for (NodeId v = 0; v < net.node_count(); ++v) {
    auto& list = adj[v];
    const auto& out = net.successors(v);
    const auto& in = net.predecessors(v);
    list.reserve(out.size() + in.size());
    std::set_union(out.begin(), out.end(), in.begin(), in.end(),
                   std::back_inserter(list));
    list.erase(std::remove(list.begin(), list.end(), v), list.end());
  }
  return UndirectedNetwork(std::move(adj));
}

void write_edge_list(std::ostream& out, const DirectedNetwork& net,
                     std::string_view scenario) {
  out << "# nodes=" << net.node_count() << " edges=" << net.edge_count()
      << " scenario=" << scenario << '\n';
  for (const auto& [from, to] : net.edges()) {
    out << net.word(from) << '\t' << net.word(to) << '\n';
  }
}

}  // namespace stylo
