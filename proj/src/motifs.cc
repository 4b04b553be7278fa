#include "stylo/motifs.h"

#include <algorithm>
#include <atomic>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "stylo/parallel.h"

namespace stylo {
namespace {

constexpr std::array<std::array<int, 3>, 6> kPermutations = {{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

std::uint16_t min_over_permutations(TriadCode code) {
  std::uint16_t best = code.bits();
  for (const auto& p : kPermutations) {
    best = std::min(best, code.permuted(p).bits());
  }
  return best;
}

struct TypeTable {
  std::array<std::uint16_t, kMotifTypeCount> ids{};
  // Code -> label (1..13), 0 for codes that are not motifs.
  std::array<std::uint8_t, 512> label_of_code{};
};

const TypeTable& type_table() {
  static const TypeTable table = [] {
    TypeTable t;
    std::vector<std::uint16_t> minima;
    for (std::uint16_t bits = 0; bits < 512; ++bits) {
      const TriadCode code(bits);
      if (!code.valid() || !code.weakly_connected()) continue;
      minima.push_back(min_over_permutations(code));
    }
    std::sort(minima.begin(), minima.end());
    minima.erase(std::unique(minima.begin(), minima.end()), minima.end());
    if (minima.size() != kMotifTypeCount) {
      throw std::logic_error("triad enumeration did not yield 13 types");
    }
    std::copy(minima.begin(), minima.end(), t.ids.begin());
    for (std::uint16_t bits = 0; bits < 512; ++bits) {
      const TriadCode code(bits);
      if (!code.valid() || !code.weakly_connected()) continue;
      const auto id = min_over_permutations(code);
      const auto pos = std::lower_bound(minima.begin(), minima.end(), id) - minima.begin();
      t.label_of_code[bits] = static_cast<std::uint8_t>(pos + 1);
    }
    return t;
  }();
  return table;
}

// Skeleton neighbor with the direction of the dyad as seen from the owner:
// bit 0 = owner -> neighbor, bit 1 = neighbor -> owner.
struct Dyad {
  NodeId node;
  std::uint8_t dir;
};

std::vector<std::vector<Dyad>> build_skeleton(const DirectedNetwork& net) {
  std::vector<std::vector<Dyad>> skel(net.node_count());
  for (NodeId v = 0; v < net.node_count(); ++v) {
    const auto& out = net.successors(v);
    const auto& in = net.predecessors(v);
    auto& list = skel[v];
    list.reserve(out.size() + in.size());
    std::size_t i = 0, j = 0;
    while (i < out.size() || j < in.size()) {
      NodeId w;
      std::uint8_t dir = 0;
      if (j == in.size() || (i < out.size() && out[i] < in[j])) {
        w = out[i++];
        dir = 1;
      } else if (i == out.size() || in[j] < out[i]) {
        w = in[j++];
        dir = 2;
      } else {
        w = out[i];
        ++i;
        ++j;
        dir = 3;
      }
      if (w != v) list.push_back({w, dir});
    }
  }
  return skel;
}

std::uint16_t code_of(std::uint8_t d01, std::uint8_t d02, std::uint8_t d12) {
  std::uint16_t bits = 0;
  if (d01 & 1) bits |= TriadCode::bit_for(0, 1);
  if (d01 & 2) bits |= TriadCode::bit_for(1, 0);
  if (d02 & 1) bits |= TriadCode::bit_for(0, 2);
  if (d02 & 2) bits |= TriadCode::bit_for(2, 0);
  if (d12 & 1) bits |= TriadCode::bit_for(1, 2);
  if (d12 & 2) bits |= TriadCode::bit_for(2, 1);
  return bits;
}

}  // namespace

bool TriadCode::weakly_connected() const {
  auto linked = [this](int a, int b) { return has_edge(a, b) || has_edge(b, a); };
  const int links = int{linked(0, 1)} + int{linked(0, 2)} + int{linked(1, 2)};
  return links >= 2;
}

TriadCode TriadCode::permuted(const std::array<int, 3>& perm) const {
  std::uint16_t out = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j && has_edge(i, j)) out |= bit_for(perm[i], perm[j]);
    }
  }
  return TriadCode(out);
}

MotifType canonical_triad_id(TriadCode code) {
  if (!code.valid() || !code.weakly_connected()) {
    throw std::invalid_argument("not a motif");
  }
  const auto& ids = type_table().ids;
  const std::uint16_t id = min_over_permutations(code);
  const auto it = std::lower_bound(ids.begin(), ids.end(), id);
  return MotifType{id, static_cast<int>(it - ids.begin()) + 1};
}

const std::array<std::uint16_t, kMotifTypeCount>& motif_canonical_ids() {
  return type_table().ids;
}

std::uint64_t MotifCensus::total() const {
  std::uint64_t sum = 0;
  for (auto c : counts) sum += c;
  return sum;
}

std::uint64_t MotifCensus::count_for_id(std::uint16_t canonical_id) const {
  const auto& ids = motif_canonical_ids();
  const auto it = std::find(ids.begin(), ids.end(), canonical_id);
  if (it == ids.end()) throw std::invalid_argument("not a motif id");
  return counts[static_cast<std::size_t>(it - ids.begin())];
}

// Batagelj-Mrvar enumeration restricted to connected triads: every
// connected triple {v, u, w} is visited exactly once, from its
// lowest-indexed skeleton edge (v, u) with v < u whose third node w either
// follows u, or lies between v and u without touching v.
MotifCensus triad_census(const DirectedNetwork& net, unsigned threads) {
  const auto& labels = type_table().label_of_code;
  const auto skel = build_skeleton(net);
  const std::size_t n = skel.size();

  using Counts = std::array<std::uint64_t, kMotifTypeCount>;
  auto count_range = [&](std::size_t begin, std::size_t end, Counts& acc) {
    for (std::size_t vi = begin; vi < end; ++vi) {
      const NodeId v = static_cast<NodeId>(vi);
      const auto& nv = skel[v];
      for (const Dyad& vu : nv) {
        const NodeId u = vu.node;
        if (u <= v) continue;
        const auto& nu = skel[u];
        std::size_t i = 0, j = 0;
        while (i < nv.size() || j < nu.size()) {
          NodeId w;
          std::uint8_t dvw = 0, duw = 0;
          if (j == nu.size() || (i < nv.size() && nv[i].node < nu[j].node)) {
            w = nv[i].node;
            dvw = nv[i++].dir;
          } else if (i == nv.size() || nu[j].node < nv[i].node) {
            w = nu[j].node;
            duw = nu[j++].dir;
          } else {
            w = nv[i].node;
            dvw = nv[i++].dir;
            duw = nu[j++].dir;
          }
          if (w == u || w == v) continue;
          if (u < w || (v < w && w < u && dvw == 0)) {
            ++acc[labels[code_of(vu.dir, dvw, duw)] - 1];
          }
        }
      }
    }
  };

  MotifCensus census;
  census.counts = parallel_reduce_chunks<Counts>(
      n, /*chunk=*/64, threads, count_range, [](Counts& into, const Counts& from) {
        for (int k = 0; k < kMotifTypeCount; ++k) into[k] += from[k];
      });
  return census;
}

MotifCensus census_equivalence_oracle(const DirectedNetwork& net) {
  const std::size_t n = net.node_count();
  if (n > kOracleNodeLimit) {
    throw std::invalid_argument("network too large for the brute-force oracle");
  }
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const auto& [a, b] : net.edges()) {
    if (a != b) adj[a][b] = true;
  }
  MotifCensus census;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        const std::size_t nodes[3] = {a, b, c};
        std::uint16_t bits = 0;
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) {
            if (i != j && adj[nodes[i]][nodes[j]]) bits |= TriadCode::bit_for(i, j);
          }
        }
        const TriadCode code(bits);
        if (!code.weakly_connected()) continue;
        ++census.counts[canonical_triad_id(code).label - 1];
      }
    }
  }
  return census;
}

void write_motif_type_table(std::ostream& out) {
  out << "label,canonical_id,edges\n";
  const auto& ids = motif_canonical_ids();
  for (int k = 0; k < kMotifTypeCount; ++k) {
    const TriadCode code(ids[k]);
    std::string edges;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i == j || !code.has_edge(i, j)) continue;
        if (!edges.empty()) edges += ';';
        edges += std::to_string(i + 1) + "->" + std::to_string(j + 1);
      }
    }
    out << (k + 1) << ',' << ids[k] << ',' << edges << '\n';
  }
}

}  // namespace stylo
