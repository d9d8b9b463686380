#include <gtest/gtest.h>

#include <map>

#include "fixtures.hpp"
#include "rds/core.hpp"
#include "rds/oracle.hpp"

using namespace rds;
using namespace fixtures;

namespace {

ErrorCode code_of(const InstanceDescription& d, Validation mode = Validation::kStrict) {
  try {
    validate_instance(d, mode);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected a validation error";
  return ErrorCode::kParse;
}

}  // namespace

TEST(Validate, F2IsValidAndHalfRegular) {
  const auto inst = make_instance(f2());
  EXPECT_TRUE(inst->half_regular());
  EXPECT_EQ(inst->u_size(), 3);
  EXPECT_EQ(inst->chords().size(), 6U);
}

TEST(Validate, OverlappingMatching) {
  EXPECT_EQ(code_of(bipartite({1, 1}, {1, 1}, {{0, 0}, {0, 1}})), ErrorCode::kOverlappingMatching);
  EXPECT_EQ(code_of(bipartite({1, 1}, {1, 1}, {{0, 1}, {1, 1}})), ErrorCode::kOverlappingMatching);
}

TEST(Validate, F5PassesStructuralValidation) {
  EXPECT_NO_THROW(validate_instance(f5(), Validation::kStructural));
  // Strict mode applies the per-vertex chord bound: u0 has one chord, degree 2.
  EXPECT_EQ(code_of(f5()), ErrorCode::kDegreeExceedsChords);
}

TEST(Validate, SumsAndRanges) {
  EXPECT_EQ(code_of(bipartite({1, 1}, {1})), ErrorCode::kDegreeSumMismatch);
  EXPECT_EQ(code_of(bipartite({1}, {1}, {}, 3)), ErrorCode::kStarCenterOutOfRange);
  EXPECT_EQ(code_of(bipartite({1}, {1}, {}, std::nullopt, {0})), ErrorCode::kStarCenterOutOfRange);
  EXPECT_EQ(code_of(bipartite({1}, {1}, {{0, 5}})), ErrorCode::kIndexOutOfRange);
  EXPECT_EQ(code_of(bipartite({-1}, {-1})), ErrorCode::kParse);
}

TEST(Validate, GeneralKindOddSum) {
  InstanceDescription d;
  d.kind = Kind::kGeneral;
  d.degrees = {1, 1, 1};
  EXPECT_EQ(code_of(d), ErrorCode::kDegreeSumMismatch);
  d.degrees = {1, 1, 2};
  EXPECT_NO_THROW(validate_instance(d));
}

TEST(Validate, StarMayShareCenterMatchingEdge) {
  // Center 0 matched to w0 and also a star leaf at w0: the union is one pair.
  const auto inst = make_instance(bipartite({1, 1}, {1, 1}, {{0, 0}}, 0, {0}));
  EXPECT_EQ(inst->chord_status(0, inst->w_vertex(0)), ChordStatus::kForbiddenNonChord);
  EXPECT_EQ(inst->chords().size(), 3U);
}

TEST(ChordStatus, Examples) {
  const auto f2i = make_instance(f2());
  EXPECT_EQ(f2i->chord_status(1, f2i->w_vertex(1)), ChordStatus::kForbiddenNonChord);
  EXPECT_EQ(f2i->chord_status(0, f2i->w_vertex(1)), ChordStatus::kChord);
  const auto f1i = make_instance(f1());
  EXPECT_EQ(f1i->chord_status(0, 1), ChordStatus::kIntraClassNonChord);
  EXPECT_THROW(f1i->chord_status(0, 9), Error);
}

TEST(ChordStatus, RealizationDistinguishesEdges) {
  const auto inst = make_instance(f2());
  const auto ra = Realization::from_local_edges(inst, kRa);
  EXPECT_EQ(ra.status(0, inst->w_vertex(1)), ChordStatus::kEdge);
  EXPECT_EQ(ra.status(0, inst->w_vertex(2)), ChordStatus::kNonEdgeChord);
}

TEST(ChordStatus, ExactlyOneStatusPerPair) {
  // Independent classification from the raw description.
  const InstanceDescription d = f4();
  const auto inst = make_instance(d);
  const auto r4 = Realization::from_local_edges(inst, kR4);
  const int n = inst->vertex_count();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const bool ua = a < 3;
      const bool ub = b < 3;
      ChordStatus expected;
      if (a == b || ua == ub) {
        expected = ChordStatus::kIntraClassNonChord;
      } else {
        const int u = ua ? a : b;
        const int w = (ua ? b : a) - 3;
        if (forbidden(d, u, w)) {
          expected = ChordStatus::kForbiddenNonChord;
        } else {
          const Edges e = kR4;
          expected = std::find(e.begin(), e.end(), std::pair(u, w)) != e.end() ? ChordStatus::kEdge
                                                                                 : ChordStatus::kNonEdgeChord;
        }
      }
      EXPECT_EQ(r4.status(a, b), expected) << a << "," << b;
    }
  }
}

TEST(Realization, RejectsInvalidEdgeSets) {
  const auto inst = make_instance(f2());
  const Edges forbidden_edge = {{0, 0}, {1, 2}, {2, 1}};
  EXPECT_THROW(Realization::from_local_edges(inst, forbidden_edge), Error);
  const Edges short_degree = {{0, 1}, {1, 2}};
  EXPECT_THROW(Realization::from_local_edges(inst, short_degree), Error);
  const Edges duplicate = {{0, 1}, {0, 1}, {2, 0}};
  EXPECT_THROW(Realization::from_local_edges(inst, duplicate), Error);
}

TEST(Realization, EdgesRoundTrip) {
  const auto inst = make_instance(f4());
  const auto r4 = Realization::from_local_edges(inst, kR4);
  EXPECT_EQ(r4.local_edges(), kR4);
  EXPECT_EQ(r4.edge_count(), 5);
  EXPECT_EQ(r4.degree(1), 2);
}

TEST(Directed, GaleRepresentation) {
  const std::vector<int> ones = {1, 1, 1};
  const ProblemInstance inst = from_directed(ones, ones);
  EXPECT_EQ(inst.kind(), Kind::kDirected);
  EXPECT_EQ(inst.matching().size(), 3U);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(inst.partner(i), inst.w_vertex(i));
  EXPECT_EQ(inst.chords().size(), 6U);
}

TEST(Directed, Errors) {
  const std::vector<int> a = {1, 1};
  const std::vector<int> b = {1};
  const std::vector<int> c = {2, 1};
  try {
    from_directed(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLengthMismatch);
  }
  try {
    from_directed(a, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSumMismatch);
  }
  EXPECT_THROW(from_directed(a, a, false), Error);
}

TEST(Directed, EmptyAndImpossible) {
  const std::vector<int> zeros = {0, 0};
  auto empty = std::make_shared<const ProblemInstance>(from_directed(zeros, zeros));
  EXPECT_EQ(enumerate_all(empty).size(), 1U);
  const std::vector<int> out = {2, 0};
  const std::vector<int> in = {0, 2};
  auto bad = std::make_shared<const ProblemInstance>(from_directed(out, in));
  EXPECT_TRUE(enumerate_all(bad).empty());
}

TEST(Directed, ThreeCycleAndOppositePairs) {
  const std::vector<int> ones3 = {1, 1, 1};
  auto f2d = std::make_shared<const ProblemInstance>(from_directed(ones3, ones3));
  const auto ra = Realization::from_local_edges(f2d, kRa);
  const std::vector<VertexPair> cycle = {{0, 1}, {1, 2}, {2, 0}};
  EXPECT_EQ(to_directed(ra), cycle);

  const std::vector<int> ones4 = {1, 1, 1, 1};
  auto f3d = std::make_shared<const ProblemInstance>(from_directed(ones4, ones4));
  const Edges pairs = {{0, 1}, {1, 0}, {2, 3}, {3, 2}};
  const auto r = Realization::from_local_edges(f3d, pairs);
  const std::vector<VertexPair> arcs = {{0, 1}, {1, 0}, {2, 3}, {3, 2}};
  EXPECT_EQ(to_directed(r), arcs);

  EXPECT_THROW(to_directed(Realization::from_local_edges(make_instance(f2()), kRa)), Error);
}

// Both sides computed independently: digraphs by filtering arc subsets, and
// through the bipartite representation with the library's enumeration.
TEST(Directed, RoundTripMatchesDigraphBruteForce) {
  int checked = 0;
  for (int n = 1; n <= 3; ++n) {
    std::vector<std::pair<int, int>> arcs;
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (x != y) arcs.emplace_back(x, y);
      }
    }
    std::map<std::pair<std::vector<int>, std::vector<int>>, std::set<std::vector<VertexPair>>> by_seq;
    for (std::uint32_t mask = 0; mask < (1U << arcs.size()); ++mask) {
      std::vector<int> out(static_cast<size_t>(n), 0);
      std::vector<int> in(static_cast<size_t>(n), 0);
      std::vector<VertexPair> g;
      for (size_t i = 0; i < arcs.size(); ++i) {
        if ((mask >> i) & 1U) {
          ++out[static_cast<size_t>(arcs[i].first)];
          ++in[static_cast<size_t>(arcs[i].second)];
          g.push_back(arcs[i]);
        }
      }
      by_seq[{out, in}].insert(g);
    }
    // Every bisequence with entries <= 2 and equal sums.
    std::vector<int> out(static_cast<size_t>(n), 0);
    std::vector<int> in(static_cast<size_t>(n), 0);
    std::vector<int> digits(static_cast<size_t>(2 * n), 0);
    while (true) {
      for (int i = 0; i < n; ++i) {
        out[static_cast<size_t>(i)] = digits[static_cast<size_t>(i)];
        in[static_cast<size_t>(i)] = digits[static_cast<size_t>(n + i)];
      }
      if (std::accumulate(out.begin(), out.end(), 0) == std::accumulate(in.begin(), in.end(), 0)) {
        auto inst = std::make_shared<const ProblemInstance>(from_directed(out, in));
        std::set<std::vector<VertexPair>> via_library;
        for (const auto& r : enumerate_all(inst)) via_library.insert(to_directed(r));
        EXPECT_EQ(via_library, by_seq[std::pair(out, in)]);
        ++checked;
      }
      size_t k = 0;
      while (k < digits.size() && digits[k] == 2) digits[k++] = 0;
      if (k == digits.size()) break;
      ++digits[k];
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(AdjacencyMatrix, Examples) {
  const auto f1i = make_instance(f1());
  const Edges r1 = {{0, 1}, {1, 0}};
  const AdjacencyMatrix m1 = adjacency_matrix(Realization::from_local_edges(f1i, r1));
  EXPECT_EQ(m1.at(0, 0), Cell::kForbidden);
  EXPECT_EQ(m1.at(0, 1), Cell::kOne);
  EXPECT_EQ(m1.at(1, 0), Cell::kOne);
  EXPECT_EQ(m1.at(1, 1), Cell::kForbidden);

  const auto f4i = make_instance(f4());
  const AdjacencyMatrix m4 = adjacency_matrix(Realization::from_local_edges(f4i, kR4));
  EXPECT_EQ(m4.column_sum(0), 1);
  EXPECT_EQ(m4.column_sum(1), 2);
  EXPECT_EQ(m4.column_sum(2), 2);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(m4.at(i, i), Cell::kForbidden);
  EXPECT_EQ(m4.row_sum(0), 2);
}
