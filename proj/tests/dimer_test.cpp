#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "ncts/connection.hpp"
#include "ncts/dimer.hpp"
#include "ncts/network.hpp"
#include "test_support.hpp"

namespace ncts {
namespace {

// Perfect matchings by plain backtracking over the ladder's edge list:
// cover the lowest uncovered vertex with every available edge.
std::set<std::vector<DimerEdge>> brute_force_matchings(const LadderGraph& g) {
  std::vector<DimerEdge> edges;
  for (int c = 0; c < g.columns; ++c) {
    if (g.rung_present[static_cast<std::size_t>(c)]) edges.push_back({EdgeKind::rung, 0, c});
  }
  for (int c = 0; c + 1 < g.columns; ++c) {
    edges.push_back({EdgeKind::horizontal, 0, c});
    edges.push_back({EdgeKind::horizontal, 1, c});
  }
  auto ends = [](const DimerEdge& e) -> std::pair<int, int> {
    if (e.kind == EdgeKind::rung) return {2 * e.col, 2 * e.col + 1};
    return {2 * e.col + e.row, 2 * (e.col + 1) + e.row};
  };
  const int n = 2 * g.columns;
  std::set<std::vector<DimerEdge>> found;
  std::vector<bool> covered(static_cast<std::size_t>(n), false);
  std::vector<DimerEdge> chosen;
  auto rec = [&](auto&& self) -> void {
    int v = 0;
    while (v < n && covered[static_cast<std::size_t>(v)]) ++v;
    if (v == n) {
      auto m = chosen;
      std::sort(m.begin(), m.end());
      found.insert(m);
      return;
    }
    for (const auto& e : edges) {
      auto [a, b] = ends(e);
      if (a != v && b != v) continue;
      if (covered[static_cast<std::size_t>(a)] || covered[static_cast<std::size_t>(b)]) continue;
      covered[static_cast<std::size_t>(a)] = covered[static_cast<std::size_t>(b)] = true;
      chosen.push_back(e);
      self(self);
      chosen.pop_back();
      covered[static_cast<std::size_t>(a)] = covered[static_cast<std::size_t>(b)] = false;
    }
  };
  rec(rec);
  return found;
}

LadderGraph ladder_for(const InitialPath& path, LatticePoint p) {
  const auto [j0, j1] = projections(path, p);
  return build_ladder(path, j0, j1);
}

std::vector<Word> sorted_words(std::vector<Word> ws) {
  std::sort(ws.begin(), ws.end());
  return ws;
}

TEST(Ladder, SmallShapes) {
  const auto flat = fundamental_path(-10, 10);
  const auto l22 = ladder_for(flat, {0, 2});
  EXPECT_EQ(l22.columns, 2);
  EXPECT_EQ(count_matchings(l22), 2);

  const auto l24 = build_ladder(fundamental_path(1, 5), 1, 5);
  EXPECT_EQ(l24.columns, 4);
  EXPECT_EQ(count_matchings(l24), 5);

  const auto ex = ladder_for(InitialPath(0, {2, 1, 0, 1, 0, 1}), {2, 4});
  EXPECT_EQ(ex.columns, 6);
  EXPECT_EQ(ex.rung_present, (std::vector<bool>{true, false, true, true, true, true}));
  EXPECT_EQ(count_matchings(ex), 8);
  EXPECT_EQ(ex.faces[1].kind, FaceKind::hexagon);
}

TEST(Ladder, RejectsSectionsWithWrongEndSteps) {
  const auto flat = fundamental_path(0, 6);
  try {
    build_ladder(flat, 0, 4);  // starts with an up step
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_section);
  }
  EXPECT_THROW(build_ladder(flat, 1, 4), Error);  // ends with a down step
  EXPECT_NO_THROW(build_ladder(flat, 1, 5));
}

TEST(Ladder, DegenerateSectionHasOneEmptyMatching) {
  const auto g = build_ladder(fundamental_path(0, 4), 2, 2);
  EXPECT_EQ(g.columns, 0);
  const auto ms = enumerate_matchings(g);
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_EQ(ms[0].weight, (Word{atom(2)}));
  EXPECT_EQ(count_matchings(g), 1);
}

TEST(Matchings, EnumerationAgreesWithBruteForce) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 30; ++trial) {
    const auto path = testing::random_path(rng, -5, 11);
    for (const auto& p : testing::solvable_points(path, 8)) {
      const auto g = ladder_for(path, p);
      const auto brute = brute_force_matchings(g);
      std::set<std::vector<DimerEdge>> ours;
      for (const auto& m : enumerate_matchings(g)) {
        EXPECT_TRUE(is_perfect_matching(g, m.edges));
        ours.insert(m.edges);
      }
      EXPECT_EQ(ours, brute);
      EXPECT_EQ(count_matchings(g), Integer(brute.size()));
    }
  }
}

TEST(Matchings, WeightsMatchNetworkPathsAsMultisets) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto path = testing::random_path(rng, -5, 11);
    for (const auto& p : testing::solvable_points(path, 8)) {
      const auto [j0, j1] = projections(path, p);
      std::vector<Word> from_paths;
      for (const auto& np : enumerate_paths(build_network(path, j0, j1), 1, 1)) {
        from_paths.push_back(np.weight * Word{atom(path.label(j1))});
      }
      std::vector<Word> from_dimers;
      for (const auto& m : enumerate_matchings(build_ladder(path, j0, j1))) from_dimers.push_back(m.weight);
      EXPECT_EQ(sorted_words(from_dimers), sorted_words(from_paths));
      EXPECT_EQ(partition_function(build_ladder(path, j0, j1)), solve(path, p));
    }
  }
}

TEST(FaceWeights, SquareTable) {
  const FacePattern gap{false, false, 1}, both{true, true, 0}, none{false, false, 0}, one{true, false, 0};
  EXPECT_EQ(face_weight(FaceKind::square, true, gap), FaceWeight::t_inv);
  EXPECT_EQ(face_weight(FaceKind::square, true, both), FaceWeight::tb_inv);
  EXPECT_EQ(face_weight(FaceKind::square, true, none), FaceWeight::tb);
  EXPECT_EQ(face_weight(FaceKind::square, true, one), FaceWeight::one);
  EXPECT_EQ(face_weight(FaceKind::square, false, gap), FaceWeight::tb_inv);
  EXPECT_EQ(face_weight(FaceKind::square, false, both), FaceWeight::t_inv);
  EXPECT_EQ(face_weight(FaceKind::square, false, none), FaceWeight::t);
  EXPECT_EQ(face_weight(FaceKind::square, false, one), FaceWeight::one);
  // A gap next to an occupied rung cannot occur in a perfect matching.
  EXPECT_FALSE(face_weight(FaceKind::square, true, FacePattern{true, false, 1}).has_value());
}

TEST(FaceWeights, HexagonTable) {
  EXPECT_EQ(face_weight(FaceKind::hexagon, true, FacePattern{false, true, 1}), FaceWeight::t_inv);
  EXPECT_EQ(face_weight(FaceKind::hexagon, true, FacePattern{false, false, 1}), FaceWeight::one);
  EXPECT_EQ(face_weight(FaceKind::hexagon, true, FacePattern{true, false, 2}), FaceWeight::tb_inv);
  EXPECT_EQ(face_weight(FaceKind::hexagon, true, FacePattern{false, false, 2}), FaceWeight::one);
  EXPECT_EQ(face_weight(FaceKind::hexagon, false, FacePattern{false, true, 1}), FaceWeight::tb_inv);
  EXPECT_EQ(face_weight(FaceKind::hexagon, false, FacePattern{true, false, 2}), FaceWeight::t_inv);
  EXPECT_FALSE(face_weight(FaceKind::hexagon, true, FacePattern{false, false, 3}).has_value());
}

TEST(Matchings, CountDpHandlesWideLadders) {
  const auto flat = fundamental_path(-40, 40);
  // Flat sections: alternate Fibonacci numbers F(2k-1).
  Integer a = 1, b = 1;  // F(2k-1), F(2k)
  for (int k = 1; k <= 30; ++k) {
    const int j = k % 2 == 0 ? 0 : 1;
    EXPECT_EQ(count_matchings(ladder_for(flat, {j, k})), a) << "k=" << k;
    const Integer next = a + b;
    b = b + next;
    a = next;
  }
}

TEST(Ladder, DotExport) {
  const auto dot = to_dot(build_ladder(fundamental_path(1, 5), 1, 5));
  EXPECT_NE(dot.find("graph ladder"), std::string::npos);
  EXPECT_NE(dot.find("v0_0 -- v1_0"), std::string::npos);
  EXPECT_NE(dot.find("label=\"t3\""), std::string::npos);
}

}  // namespace
}  // namespace ncts
