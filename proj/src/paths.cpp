#include "rds/paths.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "rds/chain.hpp"

namespace rds {

namespace {

void require_bipartite(const ProblemInstance& inst) {
  if (!inst.is_bipartite_like()) {
    throw Error(ErrorCode::kUnsupported, "matrix audits need a bipartite or directed instance");
  }
}

AuditMatrix empty_matrix(const InstancePtr& inst) {
  require_bipartite(*inst);
  AuditMatrix m;
  m.inst = inst;
  m.columns = inst->u_size();
  m.rows = inst->w_size();
  m.entries.assign(static_cast<size_t>(m.columns * m.rows), 0);
  m.forbidden.assign(m.entries.size(), 0);
  for (int u = 0; u < m.columns; ++u) {
    for (int w = 0; w < m.rows; ++w) {
      if (!inst->is_chord(u, inst->w_vertex(w))) m.forbidden[static_cast<size_t>(u * m.rows + w)] = 1;
    }
  }
  return m;
}

bool margins_match(const AuditMatrix& m) {
  const ProblemInstance& inst = *m.inst;
  for (int u = 0; u < m.columns; ++u) {
    if (m.column_sum(u) != inst.degree(u)) return false;
  }
  for (int w = 0; w < m.rows; ++w) {
    if (m.row_sum(w) != inst.degree(inst.w_vertex(w))) return false;
  }
  return true;
}

int badness(const AuditMatrix& m) {
  int b = 0;
  for (int e : m.entries) b += std::max(0, e - 1) + std::max(0, -e);
  return b;
}

bool search_switches(AuditMatrix& m, int depth, std::vector<Switch>& path) {
  const int current = badness(m);
  if (current == 0) return true;
  if (depth == 0) return false;
  struct Candidate {
    int after;
    Switch sw;
  };
  std::vector<Candidate> candidates;
  for (int u = 0; u < m.columns; ++u) {
    for (int u2 = 0; u2 < m.columns; ++u2) {
      if (u2 == u) continue;
      for (int w = 0; w < m.rows; ++w) {
        for (int w2 = 0; w2 < m.rows; ++w2) {
          if (w2 == w) continue;
          // Each unordered switch appears twice (u,w)<->(u2,w2); keep one.
          if (std::pair(u, w) > std::pair(u2, w2)) continue;
          if (m.is_forbidden(u, w) || m.is_forbidden(u2, w2) || m.is_forbidden(u, w2) ||
              m.is_forbidden(u2, w)) {
            continue;
          }
          const Switch sw{u, u2, w, w2};
          apply_switch(m, sw);
          const int after = badness(m);
          apply_switch(m, Switch{u, u2, w2, w});  // undo
          if (after < current) candidates.push_back({after, sw});
        }
      }
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.after < b.after; });
  for (const auto& c : candidates) {
    apply_switch(m, c.sw);
    path.push_back(c.sw);
    if (search_switches(m, depth - 1, path)) return true;
    path.pop_back();
    apply_switch(m, Switch{c.sw.u, c.sw.u2, c.sw.w2, c.sw.w});
  }
  return false;
}

}  // namespace

int AuditMatrix::column_sum(int u) const {
  int s = 0;
  for (int w = 0; w < rows; ++w) s += at(u, w);
  return s;
}

int AuditMatrix::row_sum(int w) const {
  int s = 0;
  for (int u = 0; u < columns; ++u) s += at(u, w);
  return s;
}

AuditMatrix realization_matrix(const Realization& real) {
  AuditMatrix m = empty_matrix(real.instance_ptr());
  for (const auto& [a, b] : real.edges()) m.at(a, real.instance().local_index(b)) = 1;
  return m;
}

AuditMatrix auxiliary_matrix(const Realization& x, const Realization& y, const Realization& z) {
  AuditMatrix m = realization_matrix(x);
  const AuditMatrix my = realization_matrix(y);
  const AuditMatrix mz = realization_matrix(z);
  for (size_t i = 0; i < m.entries.size(); ++i) m.entries[i] += my.entries[i] - mz.entries[i];
  return m;
}

int hamming(const AuditMatrix& a, const AuditMatrix& b) {
  int d = 0;
  for (size_t i = 0; i < a.entries.size(); ++i) d += a.entries[i] != b.entries[i] ? 1 : 0;
  return d;
}

BadPositions audit_bad_positions(const AuditMatrix& m) {
  BadPositions r;
  for (int u = 0; u < m.columns; ++u) {
    for (int w = 0; w < m.rows; ++w) {
      const int e = m.at(u, w);
      if (e == 0 || e == 1) continue;
      if (e == 2) {
        ++r.count2;
      } else if (e == -1) {
        ++r.count_minus1;
      } else {
        ++r.other;
      }
      if (r.column == -1 && r.same_column) {
        r.column = u;
      } else if (r.column != u) {
        r.same_column = false;
        r.column = -1;
      }
    }
  }
  if (r.same_column && r.column >= 0) r.column_not_center = r.column != m.inst->center();
  return r;
}

void apply_switch(AuditMatrix& m, const Switch& s) {
  ++m.at(s.u, s.w);
  ++m.at(s.u2, s.w2);
  --m.at(s.u, s.w2);
  --m.at(s.u2, s.w);
}

RepairResult switch_repair(const AuditMatrix& m) {
  const ProblemInstance& inst = *m.inst;
  const BadPositions bad = audit_bad_positions(m);
  if (!bad.repairable_pattern()) {
    throw Error(ErrorCode::kPreconditionViolated, "bad positions outside the repairable pattern");
  }
  if (!inst.half_regular()) throw Error(ErrorCode::kPreconditionViolated, "instance is not half-regular");
  if (!margins_match(m)) throw Error(ErrorCode::kPreconditionViolated, "margins differ from the degrees");
  AuditMatrix work = m;
  std::vector<Switch> switches;
  if (!search_switches(work, 3, switches)) {
    throw Error(ErrorCode::kAuditFailed, "no repair with at most three switches");
  }
  std::vector<VertexPair> edges;
  for (int u = 0; u < work.columns; ++u) {
    for (int w = 0; w < work.rows; ++w) {
      if (work.at(u, w) == 1) edges.emplace_back(u, inst.w_vertex(w));
    }
  }
  return RepairResult{std::move(switches), Realization(m.inst, edges)};
}

std::vector<ChordCircuit> ordered_cycle_decomposition(const Realization& g, const Realization& h) {
  const ProblemInstance& inst = g.instance();
  const int n = inst.vertex_count();
  // remaining[color][v]: unused difference chords at v, color 0 = g-edges.
  std::vector<std::set<Vertex>> remaining[2];
  remaining[0].resize(static_cast<size_t>(n));
  remaining[1].resize(static_cast<size_t>(n));
  for (const auto& [a, b] : symmetric_difference(g, h)) {
    const int c = g.has_edge(a, b) ? 0 : 1;
    remaining[c][static_cast<size_t>(a)].insert(b);
    remaining[c][static_cast<size_t>(b)].insert(a);
  }
  std::vector<ChordCircuit> cycles;
  for (Vertex start = 0; start < n; ++start) {
    while (!remaining[0][static_cast<size_t>(start)].empty()) {
      std::vector<Vertex> stack{start};
      Vertex v = start;
      int color = 0;
      while (true) {
        auto& options = remaining[color][static_cast<size_t>(v)];
        if (options.empty()) break;
        const Vertex y = *options.begin();
        options.erase(y);
        remaining[color][static_cast<size_t>(y)].erase(v);
        color ^= 1;
        v = y;
        auto it = std::find(stack.begin(), stack.end(), y);
        if (it != stack.end()) {
          cycles.emplace_back(std::vector<Vertex>(it, stack.end()));
          stack.erase(it + 1, stack.end());
        } else {
          stack.push_back(y);
        }
      }
      if (v != start || stack.size() != 1) {
        throw Error(ErrorCode::kAuditFailed, "alternating walk did not close");
      }
    }
  }
  return cycles;
}

std::vector<Realization> milestones(const Realization& x, const Realization& y,
                                    const std::vector<ChordCircuit>& cycles) {
  std::vector<Realization> out{x};
  Realization cur = x;
  for (const auto& c : cycles) {
    for (const auto& [a, b] : c.chords()) cur.toggle_chord(a, b);
    out.emplace_back(cur.instance_ptr(), cur.edges());  // re-validates
    cur = out.back();
  }
  if (!(out.back() == y)) throw Error(ErrorCode::kAuditFailed, "milestones do not reach the target");
  return out;
}

std::vector<CircularSwap> sweep_cycle(const Realization& g, const Realization& g2,
                                      const ChordCircuit& cycle) {
  const ProblemInstance& inst = g.instance();
  require_bipartite(inst);
  auto fail = [](const std::string& why) { return Error(ErrorCode::kNotAMilestonePair, why); };
  std::set<VertexPair> diff;
  for (const auto& p : symmetric_difference(g, g2)) diff.insert(p);
  std::set<VertexPair> chords;
  for (auto [a, b] : cycle.chords()) chords.insert(a < b ? VertexPair{a, b} : VertexPair{b, a});
  if (diff != chords || chords.size() != cycle.length()) throw fail("difference is not the cycle");
  if (std::set<Vertex>(cycle.vertices().begin(), cycle.vertices().end()).size() != cycle.length()) {
    throw fail("cycle is not simple");
  }
  if (!alternates(g, cycle)) throw fail("cycle does not alternate");

  const Vertex s = inst.center();
  Vertex u1 = -1;
  size_t pos = 0;
  for (size_t i = 0; i < cycle.length(); ++i) {
    const Vertex v = cycle.at(i);
    if (inst.in_u(v) && v != s && (u1 == -1 || v < u1)) {
      u1 = v;
      pos = i;
    }
  }
  if (u1 == -1) throw fail("every U vertex of the cycle is the center");
  ChordCircuit oriented = cycle.rotated(pos);
  if (g.has_edge(oriented.at(0), oriented.at(1))) oriented = oriented.reversed().rotated(oriented.length() - 1);
  // Now oriented = (u1, w1, u2, w2, ..., ul, wl) with u1w1 a non-edge of g.
  const size_t l = oriented.length() / 2;
  std::vector<Vertex> us(l + 1);
  std::vector<Vertex> ws(l + 1);
  for (size_t j = 1; j <= l; ++j) {
    us[j] = oriented.at(2 * (j - 1));
    ws[j] = oriented.at(2 * (j - 1) + 1);
  }

  Realization z = g;
  std::vector<CircularSwap> moves;
  size_t e = 1;
  while (e < l) {
    size_t i = e + 1;
    while (!z.has_edge(u1, ws[i])) ++i;
    size_t cur = i;
    while (cur > e) {
      if (inst.is_chord(u1, ws[cur - 1])) {
        CircularSwap sw = make_swap(z, ChordCircuit({u1, ws[cur - 1], us[cur], ws[cur]}));
        apply_swap_in_place(z, sw);
        moves.push_back(std::move(sw));
        cur -= 1;
      } else {
        const ChordCircuit c6({u1, ws[cur - 2], us[cur - 1], ws[cur - 1], us[cur], ws[cur]});
        for (auto& sw : elementary_circuit_to_fswaps(z, c6)) {
          apply_swap_in_place(z, sw);
          moves.push_back(std::move(sw));
        }
        cur -= 2;
      }
    }
    e = i;
  }
  if (!(z == g2)) throw Error(ErrorCode::kAuditFailed, "sweep did not reach the next milestone");
  return moves;
}

PathReport canonical_path(const Realization& x, const Realization& y,
                          const std::vector<Realization>* states) {
  const ProblemInstance& inst = x.instance();
  require_bipartite(inst);
  PathReport report;
  report.cycles = ordered_cycle_decomposition(x, y);
  report.milestones = milestones(x, y, report.cycles);

  // Exhaustive nearest search works on chord bitmasks when they fit a word.
  const bool word_keys = inst.chords().size() <= 64;
  auto nearest = [&](const AuditMatrix& m) {
    std::uint64_t ones = 0;
    std::uint64_t bad = 0;
    int bad_count = 0;
    const auto& chords = inst.chords();
    for (size_t i = 0; i < chords.size(); ++i) {
      const int e = m.at(chords[i].first, inst.local_index(chords[i].second));
      if (e == 1) ones |= std::uint64_t{1} << i;
      if (e != 0 && e != 1) {
        bad |= std::uint64_t{1} << i;
        ++bad_count;
      }
    }
    int best = -1;
    for (const auto& k : *states) {
      int d = 0;
      if (word_keys) {
        d = bad_count + std::popcount((ones ^ k.key()[0]) & ~bad);
      } else {
        d = hamming(m, realization_matrix(k));
      }
      if (best == -1 || d < best) best = d;
    }
    return best;
  };

  Realization prev = x;
  for (size_t c = 0; c < report.cycles.size(); ++c) {
    const auto moves = sweep_cycle(report.milestones[c], report.milestones[c + 1], report.cycles[c]);
    int weight = 0;
    for (const auto& sw : moves) {
      weight += sw.weight();
      Realization after = apply_swap(prev, sw);
      bool legal = true;
      try {
        jump_probability(prev, after);
      } catch (const Error&) {
        legal = false;
      }
      const AuditMatrix m = auxiliary_matrix(x, y, after);
      PathStep step{.cycle = static_cast<int>(c),
                    .move = sw.circuit.length() == 4 ? MoveType::kC4 : MoveType::kC6,
                    .swap = sw,
                    .after = after,
                    .bad = audit_bad_positions(m),
                    .legal = legal,
                    .pattern_ok = false,
                    .nearest_hamming = states ? nearest(m) : -1,
                    .repair_switches = -1,
                    .margins_ok = margins_match(m)};
      try {
        step.repair_switches = static_cast<int>(switch_repair(m).switches.size());
      } catch (const Error& err) {
        if (err.code() != ErrorCode::kPreconditionViolated) step.repair_switches = -2;
      }
      report.steps.push_back(std::move(step));
      prev = std::move(after);
    }
    report.cycle_weights.push_back(weight);
    report.cycle_half_lengths.push_back(static_cast<int>(report.cycles[c].length() / 2));
  }

  for (size_t i = 0; i < report.steps.size(); ++i) {
    PathStep& st = report.steps[i];
    // The endpoints' matrices are realization matrices, so a missing
    // neighbor counts as within the pattern.
    const bool before = i == 0 || report.steps[i - 1].bad.repairable_pattern();
    const bool after = i + 1 == report.steps.size() || report.steps[i + 1].bad.repairable_pattern();
    st.pattern_ok = st.bad.repairable_pattern() || before || after;
    report.max_bad = std::max(report.max_bad, st.bad.total());
    report.max_hamming = std::max(report.max_hamming, st.nearest_hamming);
    report.max_switches = std::max(report.max_switches, st.repair_switches);
    if (!st.legal) report.theta_ok = false;
    if (!st.pattern_ok || !st.margins_ok || st.nearest_hamming > 16 || st.repair_switches == -2) {
      report.omega_ok = false;
    }
  }
  for (size_t c = 0; c < report.cycles.size(); ++c) {
    if (report.cycle_weights[c] != report.cycle_half_lengths[c] - 1) report.theta_ok = false;
  }
  return report;
}

PathReport verify_theta_omega(const Realization& x, const Realization& y,
                              const std::vector<Realization>* states) {
  PathReport report = canonical_path(x, y, states);
  for (size_t c = 0; c < report.cycles.size(); ++c) {
    if (report.cycle_weights[c] != report.cycle_half_lengths[c] - 1) {
      throw Error(ErrorCode::kAuditFailed, "cycle " + std::to_string(c) + " used weight " +
                                               std::to_string(report.cycle_weights[c]));
    }
  }
  for (size_t i = 0; i < report.steps.size(); ++i) {
    const PathStep& st = report.steps[i];
    std::string why;
    if (!st.legal) why = "not a kernel move";
    else if (!st.margins_ok) why = "auxiliary margins differ from the degrees";
    else if (!st.pattern_ok) why = "bad positions outside the pattern";
    else if (st.nearest_hamming > 16) why = "nearest realization at distance " + std::to_string(st.nearest_hamming);
    else if (st.repair_switches == -2) why = "switch repair needed more than three switches";
    if (!why.empty()) throw Error(ErrorCode::kAuditFailed, "step " + std::to_string(i) + ": " + why);
  }
  return report;
}

}  // namespace rds
