#pragma once

// Shared instances and brute-force helpers. The helpers deliberately avoid
// the library's enumeration and swap code so they can serve as oracles.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "rds/core.hpp"

namespace fixtures {

using rds::InstanceDescription;
using rds::InstancePtr;
using rds::Kind;
using Edges = std::vector<std::pair<int, int>>;  // JSON convention

inline InstanceDescription bipartite(std::vector<int> u, std::vector<int> w,
                                     std::vector<std::pair<int, int>> matching = {},
                                     std::optional<int> center = std::nullopt,
                                     std::vector<int> leaves = {}) {
  InstanceDescription d;
  d.kind = Kind::kBipartite;
  d.u_degrees = std::move(u);
  d.w_degrees = std::move(w);
  d.matching = std::move(matching);
  d.star_center = center;
  d.star_leaves = std::move(leaves);
  return d;
}

inline std::vector<std::pair<int, int>> diagonal(int n) {
  std::vector<std::pair<int, int>> m;
  for (int i = 0; i < n; ++i) m.emplace_back(i, i);
  return m;
}

// All degrees 1 with the diagonal forbidden: realizations are derangements.
inline InstanceDescription derangement_instance(int n) {
  return bipartite(std::vector<int>(static_cast<size_t>(n), 1), std::vector<int>(static_cast<size_t>(n), 1),
                   diagonal(n));
}

inline InstanceDescription f1() { return bipartite({1, 1}, {1, 1}, {{0, 0}, {1, 1}}); }
inline InstanceDescription f2() { return derangement_instance(3); }
inline InstanceDescription f3() { return derangement_instance(4); }
inline InstanceDescription f4() { return bipartite({1, 2, 2}, {2, 2, 1}, {{1, 1}, {2, 2}}, 0, {0}); }
inline InstanceDescription f5() { return bipartite({2, 1}, {1, 2}, {{0, 0}, {1, 1}}); }

inline const Edges kRa = {{0, 1}, {1, 2}, {2, 0}};
inline const Edges kRb = {{0, 2}, {1, 0}, {2, 1}};
inline const Edges kR4 = {{0, 1}, {1, 0}, {1, 2}, {2, 0}, {2, 1}};

inline InstancePtr make(const InstanceDescription& d) {
  return rds::make_instance(d, rds::Validation::kStructural);
}

// Forbidden test straight from the description, bipartite convention.
inline bool forbidden(const InstanceDescription& d, int u, int w) {
  for (auto [a, b] : d.matching) {
    if (a == u && b == w) return true;
  }
  if (d.star_center && *d.star_center == u) {
    for (int leaf : d.star_leaves) {
      if (leaf == w) return true;
    }
  }
  return false;
}

// Every bipartite realization by filtering all subsets of allowed cells.
inline std::set<Edges> brute_force_bipartite(const InstanceDescription& d) {
  const int k = static_cast<int>(d.u_degrees.size());
  const int l = static_cast<int>(d.w_degrees.size());
  Edges cells;
  for (int u = 0; u < k; ++u) {
    for (int w = 0; w < l; ++w) {
      if (!forbidden(d, u, w)) cells.emplace_back(u, w);
    }
  }
  std::set<Edges> out;
  const std::uint64_t limit = std::uint64_t{1} << cells.size();
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    std::vector<int> du(static_cast<size_t>(k), 0);
    std::vector<int> dw(static_cast<size_t>(l), 0);
    Edges e;
    for (size_t i = 0; i < cells.size(); ++i) {
      if ((mask >> i) & 1U) {
        ++du[static_cast<size_t>(cells[i].first)];
        ++dw[static_cast<size_t>(cells[i].second)];
        e.push_back(cells[i]);
      }
    }
    if (du == d.u_degrees && dw == d.w_degrees) out.insert(e);
  }
  return out;
}

// Derangements of n by filtering all permutations.
inline long derangements(int n) {
  std::vector<int> p(static_cast<size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  long count = 0;
  do {
    bool ok = true;
    for (int i = 0; i < n; ++i) ok = ok && p[static_cast<size_t>(i)] != i;
    count += ok ? 1 : 0;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

inline Edges sorted(Edges e) {
  std::sort(e.begin(), e.end());
  return e;
}

}  // namespace fixtures
