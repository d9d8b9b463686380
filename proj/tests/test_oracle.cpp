#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "rds/construct.hpp"
#include "rds/oracle.hpp"

using namespace rds;
using namespace fixtures;

namespace {

std::set<Edges> as_edge_sets(const std::vector<Realization>& all) {
  std::set<Edges> out;
  for (const auto& r : all) out.insert(sorted(r.local_edges()));
  return out;
}

}  // namespace

TEST(Enumerate, DerangementCounts) {
  for (int n = 3; n <= 5; ++n) {
    const auto all = enumerate_all(make_instance(derangement_instance(n)));
    EXPECT_EQ(static_cast<long>(all.size()), derangements(n)) << n;
  }
  EXPECT_EQ(derangements(3), 2);
  EXPECT_EQ(derangements(4), 9);
  EXPECT_EQ(derangements(5), 44);
}

TEST(Enumerate, Fixtures) {
  EXPECT_EQ(enumerate_all(make_instance(f4())).size(), 1U);
  EXPECT_TRUE(enumerate_all(make(f5())).empty());
  const auto f2all = enumerate_all(make_instance(f2()));
  ASSERT_EQ(f2all.size(), 2U);
  EXPECT_EQ(as_edge_sets(f2all), (std::set<Edges>{kRa, kRb}));
}

TEST(Enumerate, SortedAndDistinct) {
  const auto all = enumerate_all(make_instance(f3()));
  for (size_t i = 1; i < all.size(); ++i) EXPECT_LT(all[i - 1].edges(), all[i].edges());
}

TEST(Enumerate, MatchesSubsetBruteForce) {
  std::mt19937 gen(5);
  int nonempty = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int k = 2 + static_cast<int>(gen() % 3);
    const int l = 2 + static_cast<int>(gen() % 3);
    std::vector<int> u(static_cast<size_t>(k));
    for (auto& x : u) x = static_cast<int>(gen() % 3);
    std::vector<int> w(static_cast<size_t>(l), 0);
    const int sum = std::accumulate(u.begin(), u.end(), 0);
    for (int i = 0; i < sum; ++i) ++w[gen() % static_cast<unsigned>(l)];
    std::vector<std::pair<int, int>> m;
    for (int i = 0; i < std::min(k, l); ++i) {
      if (gen() % 2) m.emplace_back(i, (i + trial) % l);
    }
    // Drop matching pairs that collide in W.
    std::set<int> used;
    std::vector<std::pair<int, int>> clean;
    for (auto p : m) {
      if (used.insert(p.second).second) clean.push_back(p);
    }
    std::vector<int> leaves;
    for (int j = 0; j < l; ++j) {
      if (gen() % 3 == 0) leaves.push_back(j);
    }
    const auto d = bipartite(u, w, clean, 0, leaves);
    const auto expected = brute_force_bipartite(d);
    EXPECT_EQ(as_edge_sets(enumerate_all(make(d))), expected) << "trial " << trial;
    nonempty += expected.empty() ? 0 : 1;
  }
  EXPECT_GT(nonempty, 30);
}

TEST(Enumerate, GeneralKindAgainstBruteForce) {
  // Degrees (1,1,1,1) on four vertices without {0,1} and {2,3}.
  InstanceDescription d;
  d.kind = Kind::kGeneral;
  d.degrees = {1, 1, 1, 1};
  d.matching = {{0, 1}, {2, 3}};
  const auto all = enumerate_all(make_instance(d));
  std::set<std::vector<VertexPair>> got;
  for (const auto& r : all) got.insert(r.edges());
  const std::set<std::vector<VertexPair>> expected = {{{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}};
  EXPECT_EQ(got, expected);
}

TEST(Enumerate, ChordGuard) {
  try {
    enumerate_all(make_instance(derangement_instance(5)), 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooLarge);
  }
}

TEST(FSwaps, F2HasOneSixCycle) {
  const auto inst = make_instance(f2());
  const auto swaps = enumerate_fswaps(Realization::from_local_edges(inst, kRa));
  ASSERT_EQ(swaps.size(), 1U);
  EXPECT_EQ(swaps[0].circuit.length(), 6U);
}

TEST(FSwaps, EverySwapLandsOnARealization) {
  const auto inst = make_instance(f3());
  const auto all = enumerate_all(inst);
  const auto keys = as_edge_sets(all);
  for (const auto& r : all) {
    for (const auto& sw : enumerate_fswaps(r)) {
      EXPECT_TRUE(is_f_compatible(*inst, sw.circuit));
      EXPECT_TRUE(sw.circuit.is_elementary());
      EXPECT_TRUE(keys.count(sorted(apply_swap(r, sw).local_edges())));
    }
  }
}

TEST(RealizationGraph, Fixtures) {
  const auto g2 = build_realization_graph(make_instance(f2()), MoveSet::kChainMoves);
  ASSERT_EQ(g2.states.size(), 2U);
  EXPECT_EQ(g2.adjacency[0], (std::vector<std::pair<int, int>>{{1, 2}}));
  EXPECT_TRUE(g2.connected());
  EXPECT_TRUE(g2.symmetric());

  const auto g4 = build_realization_graph(make_instance(f4()), MoveSet::kChainMoves);
  EXPECT_EQ(g4.states.size(), 1U);
  EXPECT_TRUE(g4.adjacency[0].empty());
  EXPECT_TRUE(g4.connected());

  for (auto moves : {MoveSet::kChainMoves, MoveSet::kAllFSwaps}) {
    const auto g3 = build_realization_graph(make_instance(f3()), moves);
    EXPECT_EQ(g3.states.size(), 9U);
    EXPECT_TRUE(g3.connected());
    EXPECT_TRUE(g3.symmetric());
  }
}

TEST(RealizationGraph, ShortestWeights) {
  const auto g = build_realization_graph(make_instance(f2()), MoveSet::kAllFSwaps);
  EXPECT_EQ(g.shortest_weights(0), (std::vector<long>{0, 2}));
  EXPECT_EQ(g.index_of(Realization::from_local_edges(make_instance(f2()), kRb)), 1);
}

TEST(Uniformity, SingleStateIsExact) {
  const auto r = uniformity_test(make_instance(f4()), 50, 200, 1);
  EXPECT_EQ(r.tv_distance, 0.0);
  EXPECT_EQ(r.counts, (std::vector<long>{200}));
}

TEST(Uniformity, F2IsClose) {
  const auto r = uniformity_test(make_instance(f2()), 60, 4000, 2);
  EXPECT_LT(r.tv_distance, 0.03);
  EXPECT_EQ(r.counts[0] + r.counts[1], 4000);
  EXPECT_GT(r.chi_square_p, 1e-4);
}
