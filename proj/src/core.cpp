#include "rds/core.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <set>

#include <boost/container_hash/hash.hpp>

namespace rds {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kOverlappingMatching: return "OverlappingMatching";
    case ErrorCode::kDegreeSumMismatch: return "DegreeSumMismatch";
    case ErrorCode::kDegreeExceedsChords: return "DegreeExceedsChords";
    case ErrorCode::kStarCenterOutOfRange: return "StarCenterOutOfRange";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kNotBipartiteForbidden: return "NotBipartiteForbidden";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kSumMismatch: return "SumMismatch";
    case ErrorCode::kNotDirectedKind: return "NotDirectedKind";
    case ErrorCode::kUnsupported: return "Unsupported";
    case ErrorCode::kInvalidRealization: return "InvalidRealization";
    case ErrorCode::kNotNormal: return "NotNormal";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
    case ErrorCode::kNotAlternating: return "NotAlternating";
    case ErrorCode::kNotAChord: return "NotAChord";
    case ErrorCode::kNotElementary: return "NotElementary";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kInstanceTooSmall: return "InstanceTooSmall";
    case ErrorCode::kNotAdjacent: return "NotAdjacent";
    case ErrorCode::kTooManyStates: return "TooManyStates";
    case ErrorCode::kNotAMilestonePair: return "NotAMilestonePair";
    case ErrorCode::kAuditFailed: return "AuditFailed";
    case ErrorCode::kExhausted: return "Exhausted";
    case ErrorCode::kNotGraphical: return "NotGraphical";
  }
  return "Unknown";
}

std::string_view kind_name(Kind kind) {
  switch (kind) {
    case Kind::kBipartite: return "bipartite";
    case Kind::kGeneral: return "general";
    case Kind::kDirected: return "directed";
  }
  return "bipartite";
}

std::string_view chord_status_name(ChordStatus status) {
  switch (status) {
    case ChordStatus::kEdge: return "Edge";
    case ChordStatus::kNonEdgeChord: return "NonEdgeChord";
    case ChordStatus::kForbiddenNonChord: return "ForbiddenNonChord";
    case ChordStatus::kIntraClassNonChord: return "IntraClassNonChord";
    case ChordStatus::kChord: return "Chord";
  }
  return "Chord";
}

namespace {

void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) throw Error(code, what);
}

// Star plus matching must form a bipartite graph; only the general kind can
// violate this (a matched pair of two star leaves closes a triangle).
bool forbidden_is_bipartite(int n, const std::vector<std::vector<Vertex>>& adj) {
  std::vector<int> color(static_cast<size_t>(n), -1);
  for (int start = 0; start < n; ++start) {
    if (color[static_cast<size_t>(start)] != -1) continue;
    color[static_cast<size_t>(start)] = 0;
    std::queue<int> queue;
    queue.push(start);
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop();
      for (Vertex y : adj[static_cast<size_t>(v)]) {
        auto& cy = color[static_cast<size_t>(y)];
        if (cy == -1) {
          cy = 1 - color[static_cast<size_t>(v)];
          queue.push(y);
        } else if (cy == color[static_cast<size_t>(v)]) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

ProblemInstance validate_instance(const InstanceDescription& raw, Validation mode) {
  ProblemInstance inst;
  inst.kind_ = raw.kind;
  inst.description_ = raw;

  std::vector<int> u_deg;
  std::vector<int> w_deg;
  std::vector<std::pair<int, int>> matching = raw.matching;
  switch (raw.kind) {
    case Kind::kBipartite:
      u_deg = raw.u_degrees;
      w_deg = raw.w_degrees;
      break;
    case Kind::kDirected: {
      require(raw.out_degrees.size() == raw.in_degrees.size(), ErrorCode::kLengthMismatch,
              "out_degrees and in_degrees differ in length");
      u_deg = raw.out_degrees;
      w_deg = raw.in_degrees;
      std::set<std::pair<int, int>> diagonal;
      for (int i = 0; i < static_cast<int>(u_deg.size()); ++i) diagonal.insert({i, i});
      for (const auto& p : matching) {
        require(diagonal.count(p) == 1, ErrorCode::kOverlappingMatching,
                "directed instances carry the diagonal matching only");
      }
      matching.assign(diagonal.begin(), diagonal.end());
      inst.description_.matching = matching;
      break;
    }
    case Kind::kGeneral:
      u_deg = raw.degrees;
      break;
  }
  for (int d : u_deg) require(d >= 0, ErrorCode::kParse, "negative degree");
  for (int d : w_deg) require(d >= 0, ErrorCode::kParse, "negative degree");

  inst.u_size_ = static_cast<int>(u_deg.size());
  inst.w_size_ = static_cast<int>(w_deg.size());
  const int n = inst.vertex_count();
  inst.degrees_ = u_deg;
  inst.degrees_.insert(inst.degrees_.end(), w_deg.begin(), w_deg.end());

  const bool bip = raw.kind != Kind::kGeneral;
  // Local -> global id for the second coordinate of pairs and for leaves.
  auto second = [&](int idx) { return bip ? inst.u_size_ + idx : idx; };
  const int second_range = bip ? inst.w_size_ : n;

  if (raw.star_center) {
    require(*raw.star_center >= 0 && *raw.star_center < inst.u_size_,
            ErrorCode::kStarCenterOutOfRange, "star_center outside the U class");
    inst.star_center_ = *raw.star_center;
  } else {
    require(raw.star_leaves.empty(), ErrorCode::kStarCenterOutOfRange,
            "star_leaves given without star_center");
  }

  inst.forbidden_.assign(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
  std::vector<std::vector<Vertex>> forbidden_adj(static_cast<size_t>(n));
  auto forbid = [&](Vertex a, Vertex b) {
    auto& fa = inst.forbidden_[static_cast<size_t>(a) * static_cast<size_t>(n) + static_cast<size_t>(b)];
    if (fa) return;
    fa = 1;
    inst.forbidden_[static_cast<size_t>(b) * static_cast<size_t>(n) + static_cast<size_t>(a)] = 1;
    forbidden_adj[static_cast<size_t>(a)].push_back(b);
    forbidden_adj[static_cast<size_t>(b)].push_back(a);
  };

  inst.partner_.assign(static_cast<size_t>(n), -1);
  for (const auto& [a, b] : matching) {
    require(a >= 0 && a < inst.u_size_ && b >= 0 && b < second_range,
            ErrorCode::kIndexOutOfRange, "matching pair out of range");
    const Vertex ga = a;
    const Vertex gb = second(b);
    require(ga != gb, ErrorCode::kIndexOutOfRange, "matching pair is a loop");
    require(inst.partner_[static_cast<size_t>(ga)] == -1 && inst.partner_[static_cast<size_t>(gb)] == -1,
            ErrorCode::kOverlappingMatching, "matching pairs share an endpoint");
    inst.partner_[static_cast<size_t>(ga)] = gb;
    inst.partner_[static_cast<size_t>(gb)] = ga;
    inst.matching_.emplace_back(std::min(ga, gb), std::max(ga, gb));
    forbid(ga, gb);
  }
  std::sort(inst.matching_.begin(), inst.matching_.end());

  for (int leaf : raw.star_leaves) {
    require(leaf >= 0 && leaf < second_range, ErrorCode::kIndexOutOfRange, "star leaf out of range");
    const Vertex g = second(leaf);
    require(g != *inst.star_center_, ErrorCode::kIndexOutOfRange, "star leaf equals its center");
    inst.star_leaves_.push_back(g);
    forbid(*inst.star_center_, g);
  }
  std::sort(inst.star_leaves_.begin(), inst.star_leaves_.end());
  inst.star_leaves_.erase(std::unique(inst.star_leaves_.begin(), inst.star_leaves_.end()),
                          inst.star_leaves_.end());

  if (!bip) {
    require(forbidden_is_bipartite(n, forbidden_adj), ErrorCode::kNotBipartiteForbidden,
            "star plus matching contains an odd cycle");
  }

  inst.finalize();

  if (mode == Validation::kStrict) {
    if (bip) {
      const long su = std::accumulate(u_deg.begin(), u_deg.end(), 0L);
      const long sw = std::accumulate(w_deg.begin(), w_deg.end(), 0L);
      require(su == sw, ErrorCode::kDegreeSumMismatch, "U and W degree sums differ");
    } else {
      const long s = std::accumulate(u_deg.begin(), u_deg.end(), 0L);
      require(s % 2 == 0, ErrorCode::kDegreeSumMismatch, "degree sum is odd");
    }
    for (Vertex v = 0; v < n; ++v) {
      require(inst.degree(v) <= inst.chord_count(v), ErrorCode::kDegreeExceedsChords,
              "vertex " + std::to_string(v) + " has fewer chords than its degree");
    }
  }
  return inst;
}

void ProblemInstance::finalize() {
  const int n = vertex_count();
  chord_index_.assign(static_cast<size_t>(n) * static_cast<size_t>(n), -1);
  chord_count_.assign(static_cast<size_t>(n), 0);
  chords_.clear();
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      if (same_class(a, b) || is_forbidden(a, b)) continue;
      const int idx = static_cast<int>(chords_.size());
      chords_.emplace_back(a, b);
      chord_index_[static_cast<size_t>(a) * static_cast<size_t>(n) + static_cast<size_t>(b)] = idx;
      chord_index_[static_cast<size_t>(b) * static_cast<size_t>(n) + static_cast<size_t>(a)] = idx;
      ++chord_count_[static_cast<size_t>(a)];
      ++chord_count_[static_cast<size_t>(b)];
    }
  }
  const Vertex s = center();
  half_regular_ = true;
  std::optional<int> common;
  for (Vertex u = 0; u < u_size_; ++u) {
    if (u == s) continue;
    if (!common) common = degree(u);
    if (degree(u) != *common) half_regular_ = false;
  }
}

bool ProblemInstance::same_class(Vertex a, Vertex b) const {
  if (kind_ == Kind::kGeneral) return false;
  return in_u(a) == in_u(b);
}

bool ProblemInstance::is_forbidden(Vertex a, Vertex b) const {
  const auto n = static_cast<size_t>(vertex_count());
  return forbidden_[static_cast<size_t>(a) * n + static_cast<size_t>(b)] != 0;
}

ChordStatus ProblemInstance::chord_status(Vertex a, Vertex b) const {
  if (a < 0 || b < 0 || a >= vertex_count() || b >= vertex_count()) {
    throw Error(ErrorCode::kIndexOutOfRange, "vertex outside the instance");
  }
  if (a == b || same_class(a, b)) return ChordStatus::kIntraClassNonChord;
  if (is_forbidden(a, b)) return ChordStatus::kForbiddenNonChord;
  return ChordStatus::kChord;
}

bool ProblemInstance::degree_feasible() const {
  long su = 0;
  long sw = 0;
  for (Vertex v = 0; v < vertex_count(); ++v) {
    if (degree(v) > chord_count(v)) return false;
    (in_u(v) ? su : sw) += degree(v);
  }
  return kind_ == Kind::kGeneral ? su % 2 == 0 : su == sw;
}

InstancePtr make_instance(const InstanceDescription& raw, Validation mode) {
  return std::make_shared<const ProblemInstance>(validate_instance(raw, mode));
}

ChordStatus chord_status(const ProblemInstance& inst, VertexPair pair) {
  return inst.chord_status(pair.first, pair.second);
}

Realization::Realization(InstancePtr inst, std::span<const VertexPair> edges)
    : inst_(std::move(inst)),
      bits_((inst_->chords().size() + 63) / 64, 0) {
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= inst_->vertex_count() || b >= inst_->vertex_count()) {
      throw Error(ErrorCode::kInvalidRealization, "edge endpoint out of range");
    }
    const int idx = inst_->chord_index(a, b);
    if (idx < 0) throw Error(ErrorCode::kInvalidRealization, "edge on a non-chord");
    if (bit(idx)) throw Error(ErrorCode::kInvalidRealization, "duplicate edge");
    bits_[static_cast<size_t>(idx) >> 6] |= std::uint64_t{1} << (static_cast<unsigned>(idx) & 63U);
  }
  for (Vertex v = 0; v < inst_->vertex_count(); ++v) {
    if (degree(v) != inst_->degree(v)) {
      throw Error(ErrorCode::kInvalidRealization,
                  "degree mismatch at vertex " + std::to_string(v));
    }
  }
}

Realization Realization::from_local_edges(InstancePtr inst,
                                          std::span<const std::pair<int, int>> edges) {
  std::vector<VertexPair> global;
  global.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    if (inst->is_bipartite_like()) {
      if (a < 0 || a >= inst->u_size() || b < 0 || b >= inst->w_size()) {
        throw Error(ErrorCode::kInvalidRealization, "edge endpoint out of range");
      }
      global.emplace_back(a, inst->w_vertex(b));
    } else {
      global.emplace_back(a, b);
    }
  }
  return Realization(std::move(inst), global);
}

Realization Realization::from_key_unchecked(InstancePtr inst, Key key) {
  return Realization(std::move(inst), std::move(key));
}

ChordStatus Realization::status(Vertex a, Vertex b) const {
  const ChordStatus base = inst_->chord_status(a, b);
  if (base != ChordStatus::kChord) return base;
  return has_edge(a, b) ? ChordStatus::kEdge : ChordStatus::kNonEdgeChord;
}

std::vector<VertexPair> Realization::edges() const {
  std::vector<VertexPair> out;
  const auto& chords = inst_->chords();
  for (size_t i = 0; i < chords.size(); ++i) {
    if (bit(static_cast<int>(i))) out.push_back(chords[i]);
  }
  return out;
}

std::vector<std::pair<int, int>> Realization::local_edges() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& [a, b] : edges()) {
    if (inst_->is_bipartite_like()) {
      out.emplace_back(a, inst_->local_index(b));
    } else {
      out.emplace_back(a, b);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int Realization::edge_count() const {
  int total = 0;
  for (auto word : bits_) total += std::popcount(word);
  return total;
}

int Realization::degree(Vertex v) const {
  int d = 0;
  for (Vertex y = 0; y < inst_->vertex_count(); ++y) {
    if (y != v && has_edge(v, y)) ++d;
  }
  return d;
}

void Realization::toggle_chord(Vertex a, Vertex b) {
  const int idx = inst_->chord_index(a, b);
  if (idx < 0) throw Error(ErrorCode::kNotAChord, "toggle on a non-chord");
  bits_[static_cast<size_t>(idx) >> 6] ^= std::uint64_t{1} << (static_cast<unsigned>(idx) & 63U);
}

size_t KeyHash::operator()(const Realization::Key& key) const noexcept {
  return boost::hash_range(key.begin(), key.end());
}

ChordStatus chord_status(const Realization& real, VertexPair pair) {
  return real.status(pair.first, pair.second);
}

ProblemInstance from_directed(std::span<const int> out_deg, std::span<const int> in_deg,
                              bool allow_opposite) {
  require(out_deg.size() == in_deg.size(), ErrorCode::kLengthMismatch,
          "out and in sequences differ in length");
  require(std::accumulate(out_deg.begin(), out_deg.end(), 0L) ==
              std::accumulate(in_deg.begin(), in_deg.end(), 0L),
          ErrorCode::kSumMismatch, "out and in sums differ");
  require(allow_opposite, ErrorCode::kUnsupported,
          "forbidding opposite arcs is outside the star+matching class");
  InstanceDescription raw;
  raw.kind = Kind::kDirected;
  raw.out_degrees.assign(out_deg.begin(), out_deg.end());
  raw.in_degrees.assign(in_deg.begin(), in_deg.end());
  // Structural validation: a bisequence like (2,0)/(0,2) is a legitimate
  // question whose answer is "not graphical", not a malformed instance.
  return validate_instance(raw, Validation::kStructural);
}

std::vector<VertexPair> to_directed(const Realization& real) {
  if (real.instance().kind() != Kind::kDirected) {
    throw Error(ErrorCode::kNotDirectedKind, "realization is not of a directed instance");
  }
  return real.local_edges();
}

int AdjacencyMatrix::column_sum(int u) const {
  int s = 0;
  for (int w = 0; w < rows; ++w) s += at(u, w) == Cell::kOne ? 1 : 0;
  return s;
}

int AdjacencyMatrix::row_sum(int w) const {
  int s = 0;
  for (int u = 0; u < columns; ++u) s += at(u, w) == Cell::kOne ? 1 : 0;
  return s;
}

AdjacencyMatrix adjacency_matrix(const Realization& real) {
  const ProblemInstance& inst = real.instance();
  if (!inst.is_bipartite_like()) {
    throw Error(ErrorCode::kUnsupported, "adjacency matrix needs a bipartite instance");
  }
  AdjacencyMatrix m;
  m.columns = inst.u_size();
  m.rows = inst.w_size();
  m.cells.resize(static_cast<size_t>(m.columns * m.rows));
  for (int u = 0; u < m.columns; ++u) {
    for (int w = 0; w < m.rows; ++w) {
      const Vertex gw = inst.w_vertex(w);
      Cell c = Cell::kZero;
      if (inst.is_forbidden(u, gw)) {
        c = Cell::kForbidden;
      } else if (real.has_edge(u, gw)) {
        c = Cell::kOne;
      }
      m.cells[static_cast<size_t>(u * m.rows + w)] = c;
    }
  }
  return m;
}

}  // namespace rds
