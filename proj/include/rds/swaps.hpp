#pragma once

#include <array>
#include <optional>
#include <vector>

#include "rds/core.hpp"

namespace rds {

// A closed vertex sequence (x_1, ..., x_2i); the chords are x_j x_{j+1} and
// x_2i x_1.
class ChordCircuit {
 public:
  ChordCircuit() = default;
  explicit ChordCircuit(std::vector<Vertex> vertices);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  size_t length() const { return vertices_.size(); }
  Vertex at(size_t i) const { return vertices_[i % vertices_.size()]; }
  // Chord between position i and i+1 (cyclically).
  VertexPair chord(size_t i) const { return {at(i), at(i + 1)}; }
  std::vector<VertexPair> chords() const;

  // D1 and D2: every consecutive pair is a chord and no chord repeats.
  bool is_chord_circuit(const ProblemInstance& inst) const;
  // D3 and D4: no vertex more than twice, repeats at odd distance.
  bool is_elementary() const;

  // Least rotation/reflection; equal circuits have equal canonical forms.
  ChordCircuit canonical() const;
  ChordCircuit rotated(size_t start) const;
  ChordCircuit reversed() const;

  bool operator==(const ChordCircuit&) const = default;
  auto operator<=>(const ChordCircuit&) const = default;

 private:
  std::vector<Vertex> vertices_;
};

struct CircularSwap {
  ChordCircuit circuit;
  // Status of chord(0) in the realization the swap is applied to; chord(i)
  // is an edge iff (i even) == first_is_edge.
  bool first_is_edge = true;

  int weight() const { return static_cast<int>(circuit.length() / 2) - 1; }
};

// Pairs of distinct circuit vertices, not circuit chords, at odd distance > 1.
// Returned with a < b, sorted, without duplicates.
std::vector<VertexPair> pv_pairs(const ChordCircuit& circ);

bool is_f_compatible(const ProblemInstance& inst, const ChordCircuit& circ);

// Whether the chords alternate between edges and non-edge chords in `real`;
// on success reports the status of chord(0).
bool alternates(const Realization& real, const ChordCircuit& circ, bool* first_is_edge = nullptr);

// Builds a swap from a circuit that alternates in `real`.
CircularSwap make_swap(const Realization& real, const ChordCircuit& circ);

Realization apply_swap(const Realization& real, const CircularSwap& sw);
void apply_swap_in_place(Realization& real, const CircularSwap& sw);

// The chain's C4 move on two U and two W vertices, if legal.
std::optional<CircularSwap> find_c4_swap(const Realization& real, std::array<Vertex, 2> us,
                                         std::array<Vertex, 2> ws);
// The chain's F-compatible C6 move on three U and three W vertices, if legal.
std::optional<CircularSwap> find_c6_fswap(const Realization& real, std::array<Vertex, 3> us,
                                          std::array<Vertex, 3> ws);

// Splits an alternating elementary circuit into F-swaps of total weight
// length/2 - 1 whose composition equals the circuit swap.
std::vector<CircularSwap> elementary_circuit_to_fswaps(const Realization& real,
                                                       const ChordCircuit& circ);

// Alternating circuits partitioning E(g) xor E(h); each starts with a g-edge
// and no circuit holds a vertex twice at even distance.
std::vector<ChordCircuit> decompose_symmetric_difference(const Realization& g,
                                                         const Realization& h);

std::vector<VertexPair> symmetric_difference(const Realization& g, const Realization& h);

inline constexpr int kDefaultMaxDelta = 16;

// Maximum number of circuits in an alternating circuit decomposition of the
// symmetric difference, by exhaustive memoized search.
int max_alternating_circuit_count(const Realization& g, const Realization& h,
                                  int max_delta = kDefaultMaxDelta);

struct SwapDistance {
  int weight = 0;
  int delta = 0;
  int mc = 0;
};

SwapDistance swap_distance(const Realization& g, const Realization& h,
                           int max_delta = kDefaultMaxDelta);

}  // namespace rds
