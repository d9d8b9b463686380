#pragma once

#include <optional>
#include <vector>

#include "rds/core.hpp"
#include "rds/swaps.hpp"

namespace rds {

// Residual degrees during greedy construction. Deleted vertices no longer
// take part in C(x) and do not count as forbidden partners.
struct Residuals {
  std::vector<int> degree;
  std::vector<std::uint8_t> deleted;

  static Residuals initial(const ProblemInstance& inst);
};

struct NeighborEntry {
  Vertex vertex = 0;
  int residual = 0;
  Vertex partner = -1;        // forbidden partner y^F among live vertices, or -1
  int partner_residual = -1;  // -1 when the partner is absent
};

struct NeighborOrder {
  Vertex anchor = 0;
  std::vector<NeighborEntry> entries;
};

// C(x) ordered by residual degree, then partner residual degree (absent
// partners rank as -1), then ascending index. Throws kNotNormal when some
// y in C(x) has two live forbidden partners or two entries share a partner.
NeighborOrder neighbor_order(const ProblemInstance& inst, Vertex x, const Residuals& residuals);

// Greedy star-first construction; nullopt iff the instance is not graphical.
std::optional<Realization> greedy_construct(const InstancePtr& inst);

inline bool is_graphical(const InstancePtr& inst) { return greedy_construct(inst).has_value(); }

// For y, z in C(x) with xz an edge, xy a non-edge chord, and y allowed to
// precede z, returns an alternating circuit of length 4 or 6 whose swap
// replaces z by y in the neighborhood of x.
CircularSwap repair_swap(const Realization& real, Vertex x, Vertex y, Vertex z);

}  // namespace rds
