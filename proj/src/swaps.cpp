#include "rds/swaps.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

namespace rds {

ChordCircuit::ChordCircuit(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 4 || vertices_.size() % 2 != 0) {
    throw Error(ErrorCode::kPreconditionViolated, "chord-circuits have even length >= 4");
  }
}

std::vector<VertexPair> ChordCircuit::chords() const {
  std::vector<VertexPair> out;
  out.reserve(length());
  for (size_t i = 0; i < length(); ++i) out.push_back(chord(i));
  return out;
}

namespace {

VertexPair ordered(VertexPair p) {
  return p.first < p.second ? p : VertexPair{p.second, p.first};
}

}  // namespace

bool ChordCircuit::is_chord_circuit(const ProblemInstance& inst) const {
  std::set<VertexPair> seen;
  for (size_t i = 0; i < length(); ++i) {
    const auto [a, b] = chord(i);
    if (a < 0 || b < 0 || a >= inst.vertex_count() || b >= inst.vertex_count()) return false;
    if (!inst.is_chord(a, b)) return false;
    if (!seen.insert(ordered({a, b})).second) return false;
  }
  return true;
}

bool ChordCircuit::is_elementary() const {
  std::map<Vertex, std::vector<size_t>> where;
  for (size_t i = 0; i < length(); ++i) where[vertices_[i]].push_back(i);
  for (const auto& [v, pos] : where) {
    if (pos.size() > 2) return false;
    if (pos.size() == 2 && (pos[1] - pos[0]) % 2 == 0) return false;
  }
  return true;
}

ChordCircuit ChordCircuit::rotated(size_t start) const {
  std::vector<Vertex> out(length());
  for (size_t i = 0; i < length(); ++i) out[i] = at(start + i);
  return ChordCircuit(std::move(out));
}

ChordCircuit ChordCircuit::reversed() const {
  std::vector<Vertex> out(vertices_.rbegin(), vertices_.rend());
  return ChordCircuit(std::move(out));
}

ChordCircuit ChordCircuit::canonical() const {
  ChordCircuit best = *this;
  const ChordCircuit rev = reversed();
  for (size_t i = 0; i < length(); ++i) {
    for (const ChordCircuit* base : {this, &rev}) {
      ChordCircuit c = base->rotated(i);
      if (c.vertices_ < best.vertices_) best = std::move(c);
    }
  }
  return best;
}

std::vector<VertexPair> pv_pairs(const ChordCircuit& circ) {
  const size_t len = circ.length();
  std::set<VertexPair> circuit_chords;
  for (const auto& c : circ.chords()) circuit_chords.insert(ordered(c));
  std::set<VertexPair> out;
  for (size_t p = 0; p < len; ++p) {
    for (size_t q = p + 1; q < len; ++q) {
      const size_t d = q - p;
      if (d % 2 == 0 || std::min(d, len - d) <= 1) continue;
      const Vertex a = circ.at(p);
      const Vertex b = circ.at(q);
      if (a == b) continue;
      const VertexPair pair = ordered({a, b});
      if (circuit_chords.count(pair)) continue;
      out.insert(pair);
    }
  }
  return {out.begin(), out.end()};
}

bool is_f_compatible(const ProblemInstance& inst, const ChordCircuit& circ) {
  for (const auto& [a, b] : pv_pairs(circ)) {
    if (inst.is_chord(a, b)) return false;
  }
  return true;
}

bool alternates(const Realization& real, const ChordCircuit& circ, bool* first_is_edge) {
  const ProblemInstance& inst = real.instance();
  const size_t len = circ.length();
  bool prev = false;
  for (size_t i = 0; i < len; ++i) {
    const auto [a, b] = circ.chord(i);
    if (a < 0 || b < 0 || a >= inst.vertex_count() || b >= inst.vertex_count()) return false;
    if (!inst.is_chord(a, b)) return false;
    const bool e = real.has_edge(a, b);
    if (i > 0 && e == prev) return false;
    if (i == 0 && first_is_edge) *first_is_edge = e;
    prev = e;
  }
  return true;
}

CircularSwap make_swap(const Realization& real, const ChordCircuit& circ) {
  if (!circ.is_chord_circuit(real.instance())) {
    throw Error(ErrorCode::kNotAChord, "circuit uses a non-chord or repeats a chord");
  }
  bool first = false;
  if (!alternates(real, circ, &first)) {
    throw Error(ErrorCode::kNotAlternating, "circuit does not alternate");
  }
  return CircularSwap{circ, first};
}

void apply_swap_in_place(Realization& real, const CircularSwap& sw) {
  const ProblemInstance& inst = real.instance();
  const size_t len = sw.circuit.length();
  for (size_t i = 0; i < len; ++i) {
    const auto [a, b] = sw.circuit.chord(i);
    if (a < 0 || b < 0 || a >= inst.vertex_count() || b >= inst.vertex_count() ||
        !inst.is_chord(a, b)) {
      throw Error(ErrorCode::kNotAChord, "swap chord is not a chord of the instance");
    }
    const bool want_edge = (i % 2 == 0) == sw.first_is_edge;
    if (real.has_edge(a, b) != want_edge) {
      throw Error(ErrorCode::kNotAlternating, "swap does not alternate in this realization");
    }
  }
  for (size_t i = 0; i < len; ++i) {
    const auto [a, b] = sw.circuit.chord(i);
    real.toggle_chord(a, b);
  }
}

Realization apply_swap(const Realization& real, const CircularSwap& sw) {
  Realization out = real;
  apply_swap_in_place(out, sw);
  return out;
}

std::optional<CircularSwap> find_c4_swap(const Realization& real, std::array<Vertex, 2> us,
                                         std::array<Vertex, 2> ws) {
  const ProblemInstance& inst = real.instance();
  const auto [a, b] = us;
  const auto [c, d] = ws;
  if (a == b || c == d) return std::nullopt;
  if (!inst.is_chord(a, c) || !inst.is_chord(a, d) || !inst.is_chord(b, c) ||
      !inst.is_chord(b, d)) {
    return std::nullopt;
  }
  const bool ac = real.has_edge(a, c);
  const bool ad = real.has_edge(a, d);
  const bool bc = real.has_edge(b, c);
  const bool bd = real.has_edge(b, d);
  if (ac && bd && !ad && !bc) return CircularSwap{ChordCircuit({a, c, b, d}), true};
  if (ad && bc && !ac && !bd) return CircularSwap{ChordCircuit({a, d, b, c}), true};
  return std::nullopt;
}

std::optional<CircularSwap> find_c6_fswap(const Realization& real, std::array<Vertex, 3> us,
                                          std::array<Vertex, 3> ws) {
  const ProblemInstance& inst = real.instance();
  if (us[0] == us[1] || us[0] == us[2] || us[1] == us[2]) return std::nullopt;
  if (ws[0] == ws[1] || ws[0] == ws[2] || ws[1] == ws[2]) return std::nullopt;
  // The non-chords must be one per row and column; the opposite vertex of
  // u_i on the resulting hexagon is its non-chord partner.
  std::array<int, 3> blocked{-1, -1, -1};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (inst.is_chord(us[static_cast<size_t>(i)], ws[static_cast<size_t>(j)])) continue;
      if (blocked[static_cast<size_t>(i)] != -1) return std::nullopt;
      blocked[static_cast<size_t>(i)] = j;
    }
    if (blocked[static_cast<size_t>(i)] == -1) return std::nullopt;
  }
  if (blocked[0] == blocked[1] || blocked[0] == blocked[2] || blocked[1] == blocked[2]) {
    return std::nullopt;
  }
  // Walk the hexagon u0 -> w -> u -> w -> u -> w -> u0.
  std::vector<Vertex> cycle;
  std::array<bool, 3> used_u{};
  std::array<bool, 3> used_w{};
  int ui = 0;
  for (int step = 0; step < 3; ++step) {
    used_u[static_cast<size_t>(ui)] = true;
    cycle.push_back(us[static_cast<size_t>(ui)]);
    int wj = -1;
    for (int j = 0; j < 3; ++j) {
      if (j != blocked[static_cast<size_t>(ui)] && !used_w[static_cast<size_t>(j)]) {
        wj = j;
        break;
      }
    }
    used_w[static_cast<size_t>(wj)] = true;
    cycle.push_back(ws[static_cast<size_t>(wj)]);
    int next = -1;
    for (int i = 0; i < 3; ++i) {
      if (!used_u[static_cast<size_t>(i)] && blocked[static_cast<size_t>(i)] != wj) {
        next = i;
        break;
      }
    }
    if (next == -1) break;
    ui = next;
  }
  if (cycle.size() != 6) return std::nullopt;
  ChordCircuit circ(std::move(cycle));
  bool first = false;
  if (!alternates(real, circ, &first)) return std::nullopt;
  return CircularSwap{std::move(circ), first};
}

namespace {

void split_into_fswaps(Realization& work, const ChordCircuit& circ,
                       std::vector<CircularSwap>& out) {
  const ProblemInstance& inst = work.instance();
  std::optional<VertexPair> split;
  for (const auto& pair : pv_pairs(circ)) {
    if (inst.is_chord(pair.first, pair.second)) {
      split = pair;
      break;
    }
  }
  if (!split) {
    CircularSwap sw = make_swap(work, circ);
    apply_swap_in_place(work, sw);
    out.push_back(std::move(sw));
    return;
  }
  const size_t len = circ.length();
  size_t p = 0;
  size_t q = 0;
  bool found = false;
  for (size_t i = 0; i < len && !found; ++i) {
    for (size_t j = i + 1; j < len && !found; ++j) {
      const size_t d = j - i;
      if (d % 2 == 0 || std::min(d, len - d) <= 1) continue;
      if (ordered({circ.at(i), circ.at(j)}) == *split) {
        p = i;
        q = j;
        found = true;
      }
    }
  }
  std::vector<Vertex> first_part(circ.vertices().begin() + static_cast<long>(p),
                                 circ.vertices().begin() + static_cast<long>(q) + 1);
  std::vector<Vertex> second_part(circ.vertices().begin() + static_cast<long>(q),
                                  circ.vertices().end());
  second_part.insert(second_part.end(), circ.vertices().begin(),
                     circ.vertices().begin() + static_cast<long>(p) + 1);
  ChordCircuit c1(std::move(first_part));
  ChordCircuit c2(std::move(second_part));
  if (alternates(work, c1)) {
    split_into_fswaps(work, c1, out);
    split_into_fswaps(work, c2, out);
  } else {
    split_into_fswaps(work, c2, out);
    split_into_fswaps(work, c1, out);
  }
}

}  // namespace

std::vector<CircularSwap> elementary_circuit_to_fswaps(const Realization& real,
                                                       const ChordCircuit& circ) {
  if (!circ.is_chord_circuit(real.instance())) {
    throw Error(ErrorCode::kNotAChord, "not a chord-circuit");
  }
  if (!circ.is_elementary()) throw Error(ErrorCode::kNotElementary, "circuit is not elementary");
  if (!alternates(real, circ)) throw Error(ErrorCode::kNotAlternating, "circuit does not alternate");
  Realization work = real;
  std::vector<CircularSwap> out;
  split_into_fswaps(work, circ, out);
  return out;
}

std::vector<VertexPair> symmetric_difference(const Realization& g, const Realization& h) {
  std::vector<VertexPair> out;
  const auto& chords = g.instance().chords();
  for (size_t i = 0; i < chords.size(); ++i) {
    const int idx = static_cast<int>(i);
    if (g.has_chord_edge(idx) != h.has_chord_edge(idx)) out.push_back(chords[i]);
  }
  return out;
}

namespace {

struct ColoredEdge {
  Vertex a;
  Vertex b;
  bool in_g;
};

std::vector<ColoredEdge> colored_difference(const Realization& g, const Realization& h) {
  std::vector<ColoredEdge> out;
  for (const auto& [a, b] : symmetric_difference(g, h)) out.push_back({a, b, g.has_edge(a, b)});
  return out;
}

void split_even_repeats(std::vector<Vertex> seq, std::vector<std::vector<Vertex>>& out) {
  const size_t len = seq.size();
  for (size_t p = 0; p < len; ++p) {
    for (size_t q = p + 2; q < len; q += 2) {
      if (seq[p] != seq[q]) continue;
      std::vector<Vertex> inner(seq.begin() + static_cast<long>(p), seq.begin() + static_cast<long>(q));
      std::vector<Vertex> outer(seq.begin(), seq.begin() + static_cast<long>(p));
      outer.insert(outer.end(), seq.begin() + static_cast<long>(q), seq.end());
      // Keep chord(0) a g-edge: chord parity in the parent decides the color.
      if (p % 2 == 1) std::rotate(inner.begin(), inner.begin() + 1, inner.end());
      split_even_repeats(std::move(inner), out);
      split_even_repeats(std::move(outer), out);
      return;
    }
  }
  out.push_back(std::move(seq));
}

}  // namespace

std::vector<ChordCircuit> decompose_symmetric_difference(const Realization& g,
                                                         const Realization& h) {
  const int n = g.instance().vertex_count();
  const auto edges = colored_difference(g, h);
  std::vector<std::vector<size_t>> incident(static_cast<size_t>(n));
  for (size_t i = 0; i < edges.size(); ++i) {
    incident[static_cast<size_t>(edges[i].a)].push_back(i);
    incident[static_cast<size_t>(edges[i].b)].push_back(i);
  }
  auto other = [&](size_t e, Vertex v) { return edges[e].a == v ? edges[e].b : edges[e].a; };
  std::vector<bool> used(edges.size(), false);
  std::vector<std::vector<Vertex>> walks;
  for (Vertex start = 0; start < n; ++start) {
    while (true) {
      // Each walk leaves its start through a g-edge.
      auto next_edge = [&](Vertex v, bool want_g) -> std::optional<size_t> {
        std::optional<size_t> best;
        for (size_t e : incident[static_cast<size_t>(v)]) {
          if (used[e] || edges[e].in_g != want_g) continue;
          if (!best || other(e, v) < other(*best, v)) best = e;
        }
        return best;
      };
      auto first = next_edge(start, true);
      if (!first) break;
      std::vector<Vertex> walk{start};
      Vertex v = start;
      bool want_g = true;
      std::optional<size_t> e = first;
      while (e) {
        used[*e] = true;
        v = other(*e, v);
        want_g = !want_g;
        if (v == start && want_g) break;
        walk.push_back(v);
        e = next_edge(v, want_g);
      }
      if (v != start) throw Error(ErrorCode::kAuditFailed, "alternating walk failed to close");
      split_even_repeats(std::move(walk), walks);
    }
  }
  std::vector<ChordCircuit> out;
  out.reserve(walks.size());
  for (auto& w : walks) out.emplace_back(std::move(w));
  return out;
}

int max_alternating_circuit_count(const Realization& g, const Realization& h, int max_delta) {
  const auto edges = colored_difference(g, h);
  const int m = static_cast<int>(edges.size());
  if (m > max_delta || m > 30) {
    throw Error(ErrorCode::kTooLarge,
                "symmetric difference has " + std::to_string(m) + " chords, bound is " +
                    std::to_string(max_delta));
  }
  if (m == 0) return 0;
  const int n = g.instance().vertex_count();
  std::vector<std::vector<int>> incident(static_cast<size_t>(n));
  for (int i = 0; i < m; ++i) {
    incident[static_cast<size_t>(edges[static_cast<size_t>(i)].a)].push_back(i);
    incident[static_cast<size_t>(edges[static_cast<size_t>(i)].b)].push_back(i);
  }
  std::unordered_map<std::uint32_t, int> memo;
  std::function<int(std::uint32_t)> best = [&](std::uint32_t mask) -> int {
    if (mask == 0) return 0;
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    const int e0 = __builtin_ctz(mask);
    const ColoredEdge& first = edges[static_cast<size_t>(e0)];
    const Vertex anchor = first.a;
    int result = -1;
    // Depth-first over alternating trails that begin with e0 at `anchor`.
    std::function<void(Vertex, bool, std::uint32_t)> extend = [&](Vertex v, bool last_g,
                                                                  std::uint32_t used) {
      for (int e : incident[static_cast<size_t>(v)]) {
        const std::uint32_t bit = std::uint32_t{1} << e;
        if (!(mask & bit) || (used & bit)) continue;
        const ColoredEdge& ce = edges[static_cast<size_t>(e)];
        if (ce.in_g == last_g) continue;
        const Vertex y = ce.a == v ? ce.b : ce.a;
        const std::uint32_t now = used | bit;
        if (y == anchor && ce.in_g != first.in_g) {
          const int rest = best(mask & ~now);
          if (rest >= 0) result = std::max(result, 1 + rest);
          continue;
        }
        extend(y, ce.in_g, now);
      }
    };
    extend(first.b, first.in_g, std::uint32_t{1} << e0);
    memo.emplace(mask, result);
    return result;
  };
  const std::uint32_t all = m == 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << m) - 1);
  const int result = best(all);
  if (result < 0) throw Error(ErrorCode::kAuditFailed, "symmetric difference is not decomposable");
  return result;
}

SwapDistance swap_distance(const Realization& g, const Realization& h, int max_delta) {
  SwapDistance d;
  d.delta = static_cast<int>(symmetric_difference(g, h).size());
  d.mc = max_alternating_circuit_count(g, h, max_delta);
  d.weight = d.delta / 2 - d.mc;
  return d;
}

}  // namespace rds
