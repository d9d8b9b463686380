#include "rds/construct.hpp"

#include <algorithm>
#include <tuple>

namespace rds {

Residuals Residuals::initial(const ProblemInstance& inst) {
  Residuals r;
  r.degree.assign(inst.degrees().begin(), inst.degrees().end());
  r.deleted.assign(static_cast<size_t>(inst.vertex_count()), 0);
  return r;
}

namespace {

bool live(const Residuals& r, Vertex v) { return r.deleted[static_cast<size_t>(v)] == 0; }

// The unique live forbidden partner of y other than x, -1 if none, -2 if
// there is more than one.
Vertex forbidden_partner(const ProblemInstance& inst, const Residuals& r, Vertex x, Vertex y) {
  Vertex found = -1;
  auto consider = [&](Vertex z) {
    if (z < 0 || z == x || !live(r, z) || !inst.is_forbidden(y, z)) return;
    if (found == -1) {
      found = z;
    } else if (found != z) {
      found = -2;
    }
  };
  consider(inst.partner(y));
  if (const auto s = inst.star_center(); s && *s != y) {
    consider(*s);
  } else if (s && *s == y) {
    for (Vertex leaf : inst.star_leaves()) consider(leaf);
  }
  return found;
}

}  // namespace

NeighborOrder neighbor_order(const ProblemInstance& inst, Vertex x, const Residuals& residuals) {
  if (x < 0 || x >= inst.vertex_count()) throw Error(ErrorCode::kIndexOutOfRange, "anchor vertex");
  NeighborOrder order;
  order.anchor = x;
  std::vector<Vertex> partners_seen;
  for (Vertex y = 0; y < inst.vertex_count(); ++y) {
    if (y == x || !live(residuals, y) || !inst.is_chord(x, y)) continue;
    const Vertex p = forbidden_partner(inst, residuals, x, y);
    if (p == -2) {
      throw Error(ErrorCode::kNotNormal,
                  "vertex " + std::to_string(y) + " has two forbidden partners");
    }
    if (p >= 0) {
      if (std::find(partners_seen.begin(), partners_seen.end(), p) != partners_seen.end()) {
        throw Error(ErrorCode::kNotNormal, "two chords share forbidden partner " + std::to_string(p));
      }
      partners_seen.push_back(p);
    }
    NeighborEntry e;
    e.vertex = y;
    e.residual = residuals.degree[static_cast<size_t>(y)];
    e.partner = p;
    e.partner_residual = p >= 0 ? residuals.degree[static_cast<size_t>(p)] : -1;
    order.entries.push_back(e);
  }
  std::stable_sort(order.entries.begin(), order.entries.end(),
                   [](const NeighborEntry& a, const NeighborEntry& b) {
                     return std::tuple(-a.residual, -a.partner_residual, a.vertex) <
                            std::tuple(-b.residual, -b.partner_residual, b.vertex);
                   });
  return order;
}

std::optional<Realization> greedy_construct(const InstancePtr& inst) {
  const int n = inst->vertex_count();
  Residuals r = Residuals::initial(*inst);
  std::vector<Vertex> schedule{inst->center()};
  const int processed = inst->is_bipartite_like() ? inst->u_size() : n;
  for (Vertex v = 0; v < processed; ++v) {
    if (v != inst->center()) schedule.push_back(v);
  }
  std::vector<VertexPair> edges;
  for (Vertex x : schedule) {
    const int need = r.degree[static_cast<size_t>(x)];
    if (need > 0) {
      const NeighborOrder order = neighbor_order(*inst, x, r);
      if (static_cast<int>(order.entries.size()) < need) return std::nullopt;
      for (int i = 0; i < need; ++i) {
        const NeighborEntry& e = order.entries[static_cast<size_t>(i)];
        if (e.residual <= 0) return std::nullopt;
        --r.degree[static_cast<size_t>(e.vertex)];
        edges.emplace_back(std::min(x, e.vertex), std::max(x, e.vertex));
      }
    }
    r.degree[static_cast<size_t>(x)] = 0;
    r.deleted[static_cast<size_t>(x)] = 1;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (r.degree[static_cast<size_t>(v)] != 0) return std::nullopt;
  }
  std::sort(edges.begin(), edges.end());
  return Realization(inst, edges);
}

CircularSwap repair_swap(const Realization& real, Vertex x, Vertex y, Vertex z) {
  const ProblemInstance& inst = real.instance();
  const int n = inst.vertex_count();
  auto in_range = [&](Vertex v) { return v >= 0 && v < n; };
  if (!in_range(x) || !in_range(y) || !in_range(z) || y == z) {
    throw Error(ErrorCode::kPreconditionViolated, "vertices out of range or y == z");
  }
  if (!inst.is_chord(x, y) || !inst.is_chord(x, z) || !real.has_edge(x, z) || real.has_edge(x, y)) {
    throw Error(ErrorCode::kPreconditionViolated, "need xz an edge and xy a non-edge chord");
  }
  const Residuals full = Residuals::initial(inst);
  NeighborOrder order;
  try {
    order = neighbor_order(inst, x, full);
  } catch (const Error& e) {
    throw Error(ErrorCode::kPreconditionViolated, std::string("C(x) is not normal: ") + e.what());
  }
  const auto find = [&](Vertex v) {
    return *std::find_if(order.entries.begin(), order.entries.end(),
                         [&](const NeighborEntry& e) { return e.vertex == v; });
  };
  const NeighborEntry ey = find(y);
  const NeighborEntry ez = find(z);
  // Some order satisfying the degree rule must put y before z.
  if (ez.residual > ey.residual ||
      (ez.residual == ey.residual && ez.partner_residual > ey.partner_residual)) {
    throw Error(ErrorCode::kPreconditionViolated, "z must precede y in every admissible order");
  }

  for (Vertex u = 0; u < n; ++u) {
    if (u == x || u == y || u == z) continue;
    if (!inst.is_chord(u, y) || !inst.is_chord(u, z)) continue;
    if (real.has_edge(u, y) && !real.has_edge(u, z)) {
      return make_swap(real, ChordCircuit({x, z, u, y}));
    }
  }

  const Vertex yf = ey.partner;
  const Vertex zf = ez.partner;
  if (yf >= 0 && zf >= 0 && yf != zf) {
    for (Vertex u = 0; u < n; ++u) {
      if (u == x || u == y || u == z || u == yf || u == zf) continue;
      if (!inst.is_chord(yf, u) || !inst.is_chord(zf, u)) continue;
      if (!real.has_edge(yf, u) || real.has_edge(zf, u)) continue;
      ChordCircuit circ({y, x, z, yf, u, zf});
      if (!circ.is_chord_circuit(inst)) continue;
      bool first = false;
      if (alternates(real, circ, &first)) return CircularSwap{std::move(circ), first};
    }
  }
  throw Error(ErrorCode::kAuditFailed, "no alternating circuit of length 4 or 6 exists");
}

}  // namespace rds
