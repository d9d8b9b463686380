#include "rds/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <tuple>

#include <boost/math/distributions/chi_squared.hpp>

#include "rds/chain.hpp"
#include "rds/construct.hpp"

namespace rds {

namespace {

void set_bit(Realization::Key& key, int idx) {
  key[static_cast<size_t>(idx) >> 6] |= std::uint64_t{1} << (static_cast<unsigned>(idx) & 63U);
}
void clear_bit(Realization::Key& key, int idx) {
  key[static_cast<size_t>(idx) >> 6] &= ~(std::uint64_t{1} << (static_cast<unsigned>(idx) & 63U));
}

class Enumerator {
 public:
  explicit Enumerator(const InstancePtr& inst)
      : inst_(inst),
        residual_(inst->degrees().begin(), inst->degrees().end()),
        key_((inst->chords().size() + 63) / 64, 0) {
    const int n = inst->vertex_count();
    order_.clear();
    const int branching = inst->is_bipartite_like() ? inst->u_size() : n;
    for (Vertex v = 0; v < branching; ++v) order_.push_back(v);
    // Candidate neighbors of the vertex at position i: chords to vertices that
    // are not branched on before it.
    candidates_.resize(order_.size());
    for (size_t i = 0; i < order_.size(); ++i) {
      const Vertex v = order_[i];
      for (Vertex y = 0; y < n; ++y) {
        if (inst->is_chord(v, y) && (inst->is_bipartite_like() || y > v)) {
          candidates_[i].push_back(y);
        }
      }
    }
    // capacity_[i][y]: edges y can still gain once positions <= i are fixed.
    capacity_.assign(order_.size(), std::vector<int>(static_cast<size_t>(n), 0));
    for (size_t i = 0; i < order_.size(); ++i) {
      for (Vertex y = 0; y < n; ++y) {
        int cap = 0;
        for (size_t j = i + 1; j < order_.size(); ++j) {
          if (order_[j] != y && inst->is_chord(y, order_[j])) ++cap;
        }
        if (inst->is_bipartite_like() && inst->in_u(y) && static_cast<size_t>(y) > i) {
          cap = inst->chord_count(y);
        }
        capacity_[i][static_cast<size_t>(y)] = cap;
      }
    }
  }

  void run(std::vector<Realization>& out) {
    out_ = &out;
    branch(0);
  }

 private:
  bool feasible_after(size_t pos) const {
    for (Vertex y = 0; y < inst_->vertex_count(); ++y) {
      const int r = residual_[static_cast<size_t>(y)];
      if (r < 0 || r > capacity_[pos][static_cast<size_t>(y)]) return false;
    }
    return true;
  }

  void branch(size_t pos) {
    if (pos == order_.size()) {
      for (int r : residual_) {
        if (r != 0) return;
      }
      out_->push_back(Realization::from_key_unchecked(inst_, key_));
      return;
    }
    const Vertex v = order_[pos];
    const int need = residual_[static_cast<size_t>(v)];
    const auto& cand = candidates_[pos];
    if (need < 0 || need > static_cast<int>(cand.size())) return;
    std::vector<int> chosen;
    choose(pos, v, cand, 0, need, chosen);
  }

  void choose(size_t pos, Vertex v, const std::vector<Vertex>& cand, size_t from, int need,
              std::vector<int>& chosen) {
    if (need == 0) {
      const int saved = residual_[static_cast<size_t>(v)];
      residual_[static_cast<size_t>(v)] = 0;
      if (feasible_after(pos)) branch(pos + 1);
      residual_[static_cast<size_t>(v)] = saved;
      return;
    }
    for (size_t i = from; i + static_cast<size_t>(need) <= cand.size(); ++i) {
      const Vertex y = cand[i];
      if (residual_[static_cast<size_t>(y)] <= 0) continue;
      const int idx = inst_->chord_index(v, y);
      --residual_[static_cast<size_t>(y)];
      set_bit(key_, idx);
      chosen.push_back(y);
      choose(pos, v, cand, i + 1, need - 1, chosen);
      chosen.pop_back();
      clear_bit(key_, idx);
      ++residual_[static_cast<size_t>(y)];
    }
  }

  InstancePtr inst_;
  std::vector<int> residual_;
  Realization::Key key_;
  std::vector<Vertex> order_;
  std::vector<std::vector<Vertex>> candidates_;
  std::vector<std::vector<int>> capacity_;
  std::vector<Realization>* out_ = nullptr;
};

}  // namespace

std::vector<Realization> enumerate_all(const InstancePtr& inst, int max_chords) {
  if (static_cast<int>(inst->chords().size()) > max_chords) {
    throw Error(ErrorCode::kTooLarge, "instance has " + std::to_string(inst->chords().size()) +
                                          " chords, enumeration bound is " +
                                          std::to_string(max_chords));
  }
  std::vector<Realization> out;
  if (!inst->degree_feasible()) return out;
  Enumerator(inst).run(out);
  std::sort(out.begin(), out.end(), [](const Realization& a, const Realization& b) {
    return a.edges() < b.edges();
  });
  return out;
}

std::vector<CircularSwap> enumerate_fswaps(const Realization& real) {
  const ProblemInstance& inst = real.instance();
  const int n = inst.vertex_count();
  std::set<ChordCircuit> seen;
  std::vector<CircularSwap> out;
  std::vector<Vertex> seq;
  std::vector<int> count(static_cast<size_t>(n), 0);
  std::vector<int> first_pos(static_cast<size_t>(n), -1);
  std::set<VertexPair> used;

  auto key = [](Vertex a, Vertex b) { return a < b ? VertexPair{a, b} : VertexPair{b, a}; };

  std::function<void(Vertex)> extend = [&](Vertex start) {
    const Vertex v = seq.back();
    const bool want_edge = seq.size() % 2 == 1;  // chord index seq.size()-1
    // Close with a non-edge chord back to the start.
    if (!want_edge && seq.size() >= 4 && inst.is_chord(v, start) && !real.has_edge(v, start) &&
        !used.count(key(v, start))) {
      ChordCircuit circ(seq);
      if (is_f_compatible(inst, circ) && circ.is_elementary()) {
        ChordCircuit canon = circ.canonical();
        if (seen.insert(canon).second) out.push_back(CircularSwap{circ, true});
      }
    }
    if (static_cast<int>(seq.size()) >= 2 * n) return;
    for (Vertex y = start; y < n; ++y) {
      if (y == v || !inst.is_chord(v, y) || real.has_edge(v, y) != want_edge) continue;
      if (used.count(key(v, y))) continue;
      const auto yi = static_cast<size_t>(y);
      if (count[yi] == 2) continue;
      if (count[yi] == 1) {
        const int dist = static_cast<int>(seq.size()) - first_pos[yi];
        if (dist % 2 == 0) continue;
      }
      used.insert(key(v, y));
      if (count[yi] == 0) first_pos[yi] = static_cast<int>(seq.size());
      ++count[yi];
      seq.push_back(y);
      extend(start);
      seq.pop_back();
      --count[yi];
      if (count[yi] == 0) first_pos[yi] = -1;
      used.erase(key(v, y));
    }
  };

  for (Vertex start = 0; start < n; ++start) {
    seq = {start};
    count[static_cast<size_t>(start)] = 1;
    first_pos[static_cast<size_t>(start)] = 0;
    extend(start);
    count[static_cast<size_t>(start)] = 0;
    first_pos[static_cast<size_t>(start)] = -1;
  }
  return out;
}

int RealizationGraph::index_of(const Realization& real) const {
  auto it = index.find(real.key());
  return it == index.end() ? -1 : it->second;
}

bool RealizationGraph::connected() const {
  if (states.empty()) return true;
  std::vector<bool> seen(states.size(), false);
  std::vector<int> stack{0};
  seen[0] = true;
  size_t reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const auto& [y, w] : adjacency[static_cast<size_t>(v)]) {
      if (!seen[static_cast<size_t>(y)]) {
        seen[static_cast<size_t>(y)] = true;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  return reached == states.size();
}

bool RealizationGraph::symmetric() const {
  std::set<std::tuple<int, int, int>> arcs;
  for (size_t v = 0; v < adjacency.size(); ++v) {
    for (const auto& [y, w] : adjacency[v]) arcs.emplace(static_cast<int>(v), y, w);
  }
  for (const auto& [a, b, w] : arcs) {
    if (!arcs.count({b, a, w})) return false;
  }
  return true;
}

std::vector<long> RealizationGraph::shortest_weights(int source) const {
  std::vector<long> dist(states.size(), -1);
  using Item = std::pair<long, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[static_cast<size_t>(source)] = 0;
  queue.emplace(0, source);
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (d != dist[static_cast<size_t>(v)]) continue;
    for (const auto& [y, w] : adjacency[static_cast<size_t>(v)]) {
      const long nd = d + w;
      auto& dy = dist[static_cast<size_t>(y)];
      if (dy == -1 || nd < dy) {
        dy = nd;
        queue.emplace(nd, y);
      }
    }
  }
  return dist;
}

RealizationGraph build_realization_graph(const InstancePtr& inst, MoveSet moves, int max_chords) {
  RealizationGraph g;
  g.states = enumerate_all(inst, max_chords);
  for (size_t i = 0; i < g.states.size(); ++i) g.index.emplace(g.states[i].key(), static_cast<int>(i));
  g.adjacency.resize(g.states.size());
  for (size_t i = 0; i < g.states.size(); ++i) {
    const Realization& cur = g.states[i];
    std::map<int, int> best;
    auto add = [&](const CircularSwap& sw) {
      const Realization next = apply_swap(cur, sw);
      const int j = g.index_of(next);
      if (j < 0) throw Error(ErrorCode::kAuditFailed, "swap left the realization space");
      auto [it, inserted] = best.emplace(j, sw.weight());
      if (!inserted) it->second = std::min(it->second, sw.weight());
    };
    if (moves == MoveSet::kAllFSwaps) {
      for (const auto& sw : enumerate_fswaps(cur)) add(sw);
    } else {
      const int k = inst->u_size();
      const int l = inst->w_size();
      for (Vertex a = 0; a < k; ++a) {
        for (Vertex b = a + 1; b < k; ++b) {
          for (int c = 0; c < l; ++c) {
            for (int d = c + 1; d < l; ++d) {
              if (auto sw = find_c4_swap(cur, {a, b}, {inst->w_vertex(c), inst->w_vertex(d)})) add(*sw);
            }
          }
        }
      }
      for (Vertex a = 0; a < k; ++a) {
        for (Vertex b = a + 1; b < k; ++b) {
          for (Vertex c = b + 1; c < k; ++c) {
            for (int x = 0; x < l; ++x) {
              for (int y = x + 1; y < l; ++y) {
                for (int z = y + 1; z < l; ++z) {
                  if (auto sw = find_c6_fswap(cur, {a, b, c},
                                              {inst->w_vertex(x), inst->w_vertex(y), inst->w_vertex(z)})) {
                    add(*sw);
                  }
                }
              }
            }
          }
        }
      }
    }
    for (const auto& [j, w] : best) g.adjacency[i].emplace_back(j, w);
  }
  return g;
}

UniformityResult uniformity_test(const InstancePtr& inst, long steps, long n_samples,
                                 std::uint64_t seed, int max_chords) {
  const auto states = enumerate_all(inst, max_chords);
  UniformityResult result;
  if (states.empty()) throw Error(ErrorCode::kNotGraphical, "instance has no realization");
  std::unordered_map<Realization::Key, size_t, KeyHash> index;
  for (size_t i = 0; i < states.size(); ++i) index.emplace(states[i].key(), i);
  result.counts.assign(states.size(), 0);
  const auto start = greedy_construct(inst);
  if (!start) throw Error(ErrorCode::kAuditFailed, "greedy failed on a nonempty instance");
  for (long i = 0; i < n_samples; ++i) {
    const Realization end = run_chain(*start, steps, Rng::stream(seed, static_cast<std::uint64_t>(i)).next());
    ++result.counts[index.at(end.key())];
  }
  const double n = static_cast<double>(n_samples);
  const double expected = n / static_cast<double>(states.size());
  for (long c : result.counts) {
    result.tv_distance += std::abs(static_cast<double>(c) / n - 1.0 / static_cast<double>(states.size()));
    result.chi_square += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  }
  result.tv_distance /= 2.0;
  if (states.size() > 1) {
    boost::math::chi_squared dist(static_cast<double>(states.size() - 1));
    result.chi_square_p = boost::math::cdf(boost::math::complement(dist, result.chi_square));
  }
  return result;
}

}  // namespace rds
