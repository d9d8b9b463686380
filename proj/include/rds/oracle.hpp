#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rds/core.hpp"
#include "rds/swaps.hpp"

namespace rds {

inline constexpr int kDefaultMaxChords = 40;

// Every realization, by backtracking over vertices with residual-degree
// pruning; sorted by edge list.
std::vector<Realization> enumerate_all(const InstancePtr& inst, int max_chords = kDefaultMaxChords);

// All F-compatible swaps along alternating elementary circuits of any length.
std::vector<CircularSwap> enumerate_fswaps(const Realization& real);

enum class MoveSet {
  kChainMoves,  // C4 swaps and F-compatible C6 swaps on vertex triples
  kAllFSwaps,   // every F-compatible elementary circular swap, weighted
};

struct RealizationGraph {
  std::vector<Realization> states;
  std::unordered_map<Realization::Key, int, KeyHash> index;
  // (neighbor, weight); for kAllFSwaps the least weight of any connecting swap.
  std::vector<std::vector<std::pair<int, int>>> adjacency;

  int index_of(const Realization& real) const;
  bool connected() const;
  bool symmetric() const;
  // Least total weight from `source` to every state (-1 if unreachable).
  std::vector<long> shortest_weights(int source) const;
};

RealizationGraph build_realization_graph(const InstancePtr& inst, MoveSet moves,
                                         int max_chords = kDefaultMaxChords);

struct UniformityResult {
  double tv_distance = 0;
  double chi_square = 0;
  double chi_square_p = 1;
  std::vector<long> counts;  // per state of enumerate_all
};

// n_samples independent chains of `steps` proposals from the greedy start.
UniformityResult uniformity_test(const InstancePtr& inst, long steps, long n_samples,
                                 std::uint64_t seed, int max_chords = kDefaultMaxChords);

}  // namespace rds
