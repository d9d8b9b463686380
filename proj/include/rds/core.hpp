#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rds/error.hpp"

namespace rds {

// Vertices are addressed by a global id. For bipartite and directed instances
// the U class occupies ids [0, u_size) and the W class [u_size, u_size+w_size);
// a general instance has u_size == n and w_size == 0.
using Vertex = int;
using VertexPair = std::pair<Vertex, Vertex>;

enum class Kind { kBipartite, kGeneral, kDirected };

std::string_view kind_name(Kind kind);

enum class ChordStatus {
  kEdge,
  kNonEdgeChord,
  kForbiddenNonChord,
  kIntraClassNonChord,
  // Returned by the instance-only query, which cannot tell edges apart.
  kChord,
};

std::string_view chord_status_name(ChordStatus status);

// Raw, unvalidated instance as read from JSON. Indices are class-local for
// bipartite/directed kinds (star_center in U, star_leaves in W, matching as
// [u, w]) and global for the general kind.
struct InstanceDescription {
  Kind kind = Kind::kBipartite;
  std::vector<int> u_degrees;
  std::vector<int> w_degrees;
  std::vector<int> degrees;
  std::vector<int> out_degrees;
  std::vector<int> in_degrees;
  std::optional<int> star_center;
  std::vector<int> star_leaves;
  std::vector<std::pair<int, int>> matching;

  bool operator==(const InstanceDescription&) const = default;
};

enum class Validation {
  kStrict,
  // Skips the degree-sum and degree-vs-chords feasibility checks. Used for
  // intermediate instances of the counting recursion, which may legitimately
  // have zero realizations.
  kStructural,
};

class ProblemInstance {
 public:
  Kind kind() const { return kind_; }
  bool is_bipartite_like() const { return kind_ != Kind::kGeneral; }
  int u_size() const { return u_size_; }
  int w_size() const { return w_size_; }
  int vertex_count() const { return u_size_ + w_size_; }

  bool in_u(Vertex v) const { return v < u_size_; }
  Vertex w_vertex(int local) const { return u_size_ + local; }
  // Class-local index of a vertex.
  int local_index(Vertex v) const { return in_u(v) ? v : v - u_size_; }

  int degree(Vertex v) const { return degrees_[static_cast<size_t>(v)]; }
  std::span<const int> degrees() const { return degrees_; }

  std::optional<Vertex> star_center() const { return star_center_; }
  // The designated center s: the star center if one is given, otherwise the
  // first U vertex.
  Vertex center() const { return star_center_.value_or(0); }
  const std::vector<Vertex>& star_leaves() const { return star_leaves_; }
  const std::vector<VertexPair>& matching() const { return matching_; }
  // Matching partner of v, or -1.
  Vertex partner(Vertex v) const { return partner_[static_cast<size_t>(v)]; }

  bool same_class(Vertex a, Vertex b) const;
  bool is_forbidden(Vertex a, Vertex b) const;
  bool is_chord(Vertex a, Vertex b) const { return chord_index(a, b) >= 0; }
  // Position of the pair in chords(), or -1 for non-chords.
  int chord_index(Vertex a, Vertex b) const {
    return chord_index_[static_cast<size_t>(a) * static_cast<size_t>(vertex_count()) +
                        static_cast<size_t>(b)];
  }
  // All chords as (a, b) with a < b, lexicographically sorted.
  const std::vector<VertexPair>& chords() const { return chords_; }
  int chord_count(Vertex v) const { return chord_count_[static_cast<size_t>(v)]; }

  ChordStatus chord_status(Vertex a, Vertex b) const;

  // All U degrees agree, except possibly at the center.
  bool half_regular() const { return half_regular_; }

  // True when every vertex has at least as many chords as its degree and the
  // degree sums balance.
  bool degree_feasible() const;

  InstanceDescription description() const { return description_; }

 private:
  friend ProblemInstance validate_instance(const InstanceDescription&, Validation);

  ProblemInstance() = default;
  void finalize();

  Kind kind_ = Kind::kBipartite;
  int u_size_ = 0;
  int w_size_ = 0;
  std::vector<int> degrees_;
  std::optional<Vertex> star_center_;
  std::vector<Vertex> star_leaves_;
  std::vector<VertexPair> matching_;
  std::vector<Vertex> partner_;
  std::vector<std::uint8_t> forbidden_;
  std::vector<int> chord_index_;
  std::vector<VertexPair> chords_;
  std::vector<int> chord_count_;
  bool half_regular_ = false;
  InstanceDescription description_;
};

using InstancePtr = std::shared_ptr<const ProblemInstance>;

ProblemInstance validate_instance(const InstanceDescription& raw,
                                  Validation mode = Validation::kStrict);
InstancePtr make_instance(const InstanceDescription& raw,
                          Validation mode = Validation::kStrict);

// Instance-level classification; reports kChord for any chord.
ChordStatus chord_status(const ProblemInstance& inst, VertexPair pair);

// A simple graph on the instance's vertex set using chords only. Edges are
// stored as one bit per chord position, which doubles as the canonical key.
class Realization {
 public:
  using Key = std::vector<std::uint64_t>;

  // Builds from global-id edges and checks every Realization invariant.
  Realization(InstancePtr inst, std::span<const VertexPair> edges);
  // Edges in the JSON convention: [u, w] class-local for bipartite-like
  // instances, [a, b] global for general ones.
  static Realization from_local_edges(InstancePtr inst,
                                      std::span<const std::pair<int, int>> edges);
  // Wraps a bit key without checking degrees. The caller guarantees validity.
  static Realization from_key_unchecked(InstancePtr inst, Key key);

  const ProblemInstance& instance() const { return *inst_; }
  const InstancePtr& instance_ptr() const { return inst_; }

  bool has_edge(Vertex a, Vertex b) const {
    const int idx = inst_->chord_index(a, b);
    return idx >= 0 && bit(idx);
  }
  bool has_chord_edge(int chord_idx) const { return bit(chord_idx); }
  ChordStatus status(Vertex a, Vertex b) const;

  // Global-id edges (a < b), lexicographically sorted.
  std::vector<VertexPair> edges() const;
  // JSON convention edges, lexicographically sorted.
  std::vector<std::pair<int, int>> local_edges() const;
  int edge_count() const;
  int degree(Vertex v) const;

  const Key& key() const { return bits_; }

  // Flips the status of a chord. Breaks the degree invariant on its own;
  // only the swap machinery calls this, always in balanced groups.
  void toggle_chord(Vertex a, Vertex b);

  bool operator==(const Realization& other) const { return bits_ == other.bits_; }

 private:
  Realization(InstancePtr inst, Key bits) : inst_(std::move(inst)), bits_(std::move(bits)) {}
  bool bit(int idx) const {
    return (bits_[static_cast<size_t>(idx) >> 6] >> (static_cast<unsigned>(idx) & 63U)) & 1U;
  }

  InstancePtr inst_;
  Key bits_;
};

struct KeyHash {
  size_t operator()(const Realization::Key& key) const noexcept;
};

ChordStatus chord_status(const Realization& real, VertexPair pair);

// Gale's bipartite representation of a loop-free digraph: U copies carry the
// out-degrees, W copies the in-degrees, and the diagonal pairs are forbidden.
// Opposite arcs are representable; forbidding them is not a star+matching
// restriction, so allow_opposite=false is rejected.
ProblemInstance from_directed(std::span<const int> out_deg, std::span<const int> in_deg,
                              bool allow_opposite = true);

// Arcs (x, y) for a realization of a directed instance.
std::vector<VertexPair> to_directed(const Realization& real);

enum class Cell : std::uint8_t { kZero, kOne, kForbidden };

// Columns are U vertices, rows are W vertices; row 0 is w0 (the bottom row in
// the usual Cartesian drawing).
struct AdjacencyMatrix {
  int columns = 0;
  int rows = 0;
  std::vector<Cell> cells;  // column-major: cells[u * rows + w]

  Cell at(int u, int w) const { return cells[static_cast<size_t>(u * rows + w)]; }
  int column_sum(int u) const;
  int row_sum(int w) const;
};

AdjacencyMatrix adjacency_matrix(const Realization& real);

}  // namespace rds
