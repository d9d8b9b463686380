#include <gtest/gtest.h>

#include <functional>

#include "fixtures.hpp"
#include "rds/chain.hpp"
#include "rds/oracle.hpp"

using namespace rds;
using namespace fixtures;

namespace {

Realization realize(const InstancePtr& inst, const Edges& e) { return Realization::from_local_edges(inst, e); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::kParse;
}

}  // namespace

TEST(JumpProbability, Examples) {
  const auto free2 = make_instance(bipartite({1, 1}, {1, 1}));
  EXPECT_EQ(jump_probability(realize(free2, {{0, 0}, {1, 1}}), realize(free2, {{0, 1}, {1, 0}})), Rational(1, 4));

  const auto f2i = make_instance(f2());
  EXPECT_EQ(jump_probability(realize(f2i, kRa), realize(f2i, kRb)), Rational(1, 4));
}

TEST(JumpProbability, FourByFour) {
  const auto f3i = make_instance(f3());
  const auto g = realize(f3i, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
  EXPECT_EQ(jump_probability(g, realize(f3i, {{0, 3}, {1, 0}, {2, 1}, {3, 2}})), Rational(1, 144));
  // Derangements of four never differ by a C6 move (the three moved points
  // would have to be permuted among themselves); forbid only three diagonal
  // cells to get one.
  const auto partial = make_instance(bipartite({1, 1, 1, 1}, {1, 1, 1, 1}, diagonal(3)));
  const auto x = realize(partial, {{0, 1}, {1, 2}, {2, 0}, {3, 3}});
  const auto y = realize(partial, {{0, 2}, {1, 0}, {2, 1}, {3, 3}});
  EXPECT_EQ(jump_probability(x, y), Rational(1, 64));
  const auto free4 = make_instance(bipartite({1, 1, 1, 1}, {1, 1, 1, 1}));
  EXPECT_EQ(jump_probability(realize(free4, {{0, 0}, {1, 1}, {2, 2}, {3, 3}}),
                             realize(free4, {{0, 1}, {1, 0}, {2, 2}, {3, 3}})),
            Rational(1, 144));
}

TEST(JumpProbability, NotAdjacent) {
  const auto f3i = make_instance(f3());
  const auto g = realize(f3i, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
  const auto h = realize(f3i, {{0, 2}, {1, 3}, {2, 0}, {3, 1}});
  EXPECT_EQ(code_of([&] { jump_probability(g, h); }), ErrorCode::kNotAdjacent);
  EXPECT_EQ(code_of([&] { jump_probability(g, g); }), ErrorCode::kNotAdjacent);
}

TEST(Chain, ZeroStepsReturnsStart) {
  const auto inst = make_instance(f2());
  const auto ra = realize(inst, kRa);
  EXPECT_EQ(run_chain(ra, 0, 5), ra);
}

TEST(Chain, SingleRealizationNeverMoves) {
  const auto inst = make_instance(f4());
  const auto r4 = realize(inst, kR4);
  for (std::uint64_t seed = 0; seed < 20; ++seed) EXPECT_EQ(run_chain(r4, 500, seed), r4);
}

TEST(Chain, DeterministicForSeed) {
  const auto inst = make_instance(f3());
  const auto start = realize(inst, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EXPECT_EQ(run_chain(start, 300, seed), run_chain(start, 300, seed));
  }
  ChainState a{start, 0, Rng(9)};
  ChainState b{start, 0, Rng(9)};
  for (int i = 0; i < 200; ++i) {
    const auto oa = propose_step(a);
    const auto ob = propose_step(b);
    ASSERT_EQ(oa.branch, ob.branch);
    ASSERT_EQ(oa.moved, ob.moved);
    ASSERT_EQ(a.current, b.current);
  }
  EXPECT_EQ(a.step, 200U);
}

TEST(Chain, StepsStayInTheStateSpace) {
  const auto inst = make_instance(f3());
  const auto all = enumerate_all(inst);
  const std::set<Realization::Key> keys = [&] {
    std::set<Realization::Key> s;
    for (const auto& r : all) s.insert(r.key());
    return s;
  }();
  ChainState st{all.front(), 0, Rng(3)};
  int lazy = 0;
  for (int i = 0; i < 4000; ++i) {
    const auto before = st.current;
    const auto out = propose_step(st);
    lazy += out.branch == Branch::kLazy ? 1 : 0;
    ASSERT_TRUE(keys.count(st.current.key()));
    if (out.moved) ASSERT_NE(jump_probability(before, st.current), Rational(0));
  }
  EXPECT_NEAR(lazy / 4000.0, 0.5, 0.05);
}

TEST(Chain, F2EndsAtEachStateAboutHalfTheTime) {
  const auto inst = make_instance(f2());
  const auto ra = realize(inst, kRa);
  int at_ra = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) at_ra += run_chain(ra, 100, seed) == ra ? 1 : 0;
  EXPECT_GE(at_ra, 450);
  EXPECT_LE(at_ra, 550);
}

TEST(Chain, Preconditions) {
  const auto tiny = make_instance(bipartite({1}, {1}));
  EXPECT_EQ(code_of([&] { run_chain(realize(tiny, {{0, 0}}), 1, 0); }), ErrorCode::kInstanceTooSmall);
  InstanceDescription d;
  d.kind = Kind::kGeneral;
  d.degrees = {1, 1};
  const auto gen = make_instance(d);
  EXPECT_EQ(code_of([&] { exact_kernel(gen); }), ErrorCode::kUnsupported);
}

TEST(Kernel, F2) {
  const auto k = exact_kernel(make_instance(f2()));
  ASSERT_EQ(k.states.size(), 2U);
  EXPECT_EQ(k.matrix[0][0], Rational(3, 4));
  EXPECT_EQ(k.matrix[0][1], Rational(1, 4));
  EXPECT_EQ(k.matrix[1][0], Rational(1, 4));
  EXPECT_EQ(k.matrix[1][1], Rational(3, 4));
  ASSERT_EQ(k.eigenvalues.size(), 2U);
  EXPECT_NEAR(k.eigenvalues[0], 1.0, 1e-12);
  EXPECT_NEAR(k.eigenvalues[1], 0.5, 1e-12);
  EXPECT_NEAR(k.second_eigenvalue_modulus, 0.5, 1e-12);
}

TEST(Kernel, F4IsOneByOne) {
  const auto k = exact_kernel(make_instance(f4()));
  ASSERT_EQ(k.states.size(), 1U);
  EXPECT_EQ(k.matrix[0][0], Rational(1));
}

// Entries from permutation structure alone: two derangements differing in
// two positions are one C4 apart, and no other pair is adjacent.
TEST(Kernel, F3EntriesFromPermutations) {
  const auto k = exact_kernel(make_instance(f3()));
  ASSERT_EQ(k.states.size(), 9U);
  EXPECT_EQ(k.symmetry_residual, Rational(0));
  EXPECT_EQ(k.row_sum_residual, Rational(0));
  EXPECT_EQ(k.stationarity_residual, Rational(0));
  EXPECT_GE(k.min_diagonal, Rational(1, 2));
  for (size_t i = 0; i < 9; ++i) {
    std::vector<int> p(4);
    for (auto [u, w] : k.states[i].local_edges()) p[static_cast<size_t>(u)] = w;
    Rational row = 0;
    for (size_t j = 0; j < 9; ++j) {
      if (i == j) continue;
      std::vector<int> q(4);
      for (auto [u, w] : k.states[j].local_edges()) q[static_cast<size_t>(u)] = w;
      int moved = 0;
      for (int u = 0; u < 4; ++u) moved += p[static_cast<size_t>(u)] != q[static_cast<size_t>(u)] ? 1 : 0;
      const Rational expected = moved == 2 ? Rational(1, 144) : Rational(0);
      EXPECT_EQ(k.matrix[i][j], expected) << i << "," << j;
      row += k.matrix[i][j];
    }
    EXPECT_EQ(k.matrix[i][i], 1 - row);
  }
  EXPECT_LT(k.second_eigenvalue_modulus, 1.0);
}

TEST(Kernel, StateGuard) {
  EXPECT_EQ(code_of([&] { exact_kernel(make_instance(f3()), 5); }), ErrorCode::kTooManyStates);
}
