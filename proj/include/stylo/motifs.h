#ifndef STYLO_MOTIFS_H_
#define STYLO_MOTIFS_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "stylo/network.h"

namespace stylo {

// 3x3 adjacency matrix packed row-major into 9 bits; entry (i, j), with
// 0-based i, j, sits at bit 8 - (3i + j). The diagonal is always zero.
class TriadCode {
 public:
  constexpr TriadCode() = default;
  constexpr explicit TriadCode(std::uint16_t bits) : bits_(bits) {}

  static constexpr std::uint16_t bit_for(int from, int to) {
    return static_cast<std::uint16_t>(1u << (8 - (3 * from + to)));
  }

  constexpr std::uint16_t bits() const { return bits_; }
  constexpr bool has_edge(int from, int to) const {
    return (bits_ & bit_for(from, to)) != 0;
  }
  constexpr bool valid() const {
    return bits_ < 512 && (bits_ & (bit_for(0, 0) | bit_for(1, 1) | bit_for(2, 2))) == 0;
  }
  // True when the underlying undirected triad is connected.
  bool weakly_connected() const;
  // The code after renaming node i to perm[i].
  TriadCode permuted(const std::array<int, 3>& perm) const;

  friend constexpr bool operator==(TriadCode, TriadCode) = default;

 private:
  std::uint16_t bits_ = 0;
};

inline constexpr int kMotifTypeCount = 13;

struct MotifType {
  // Smallest code over the six relabelings.
  std::uint16_t canonical_id = 0;
  // 1..13, in ascending canonical_id order.
  int label = 0;
};

// Throws std::invalid_argument("not a motif") for weakly disconnected triads
// and for codes with a nonzero diagonal.
MotifType canonical_triad_id(TriadCode code);

// Canonical ids of the 13 types, indexed by label - 1.
const std::array<std::uint16_t, kMotifTypeCount>& motif_canonical_ids();

struct MotifCensus {
  std::array<std::uint64_t, kMotifTypeCount> counts{};

  std::uint64_t total() const;
  std::uint64_t count_for_id(std::uint16_t canonical_id) const;
  friend bool operator==(const MotifCensus&, const MotifCensus&) = default;
};

// Exact count of weakly connected induced 3-node subgraphs by type.
// Self-loops are ignored. `threads` = 0 picks the hardware concurrency; the
// result does not depend on it.
MotifCensus triad_census(const DirectedNetwork& net, unsigned threads = 0);

// Checks all C(n, 3) triples. Throws std::invalid_argument above
// kOracleNodeLimit nodes.
inline constexpr std::size_t kOracleNodeLimit = 200;
MotifCensus census_equivalence_oracle(const DirectedNetwork& net);

// `label,canonical_id,edges` with edges written as `1->2;2->3` on the
// canonical node numbering.
void write_motif_type_table(std::ostream& out);

}  // namespace stylo

#endif  // STYLO_MOTIFS_H_
