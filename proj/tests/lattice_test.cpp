#include <gtest/gtest.h>

#include <random>

#include "ncts/lattice.hpp"
#include "test_support.hpp"

namespace ncts {
namespace {

TEST(LatticePoint, ParityRule) {
  EXPECT_TRUE(is_lattice_point(0, 0));
  EXPECT_TRUE(is_lattice_point(-3, 1));
  EXPECT_FALSE(is_lattice_point(-3, 0));
  EXPECT_FALSE(is_lattice_point(2, 1));
}

TEST(InitialPath, RejectsBadParityAndJumps) {
  EXPECT_THROW(InitialPath(0, {1, 0}), Error);
  EXPECT_THROW(InitialPath(0, {0, 1, 3}), Error);
  EXPECT_THROW(InitialPath(0, {0, 1, 1}), Error);
  EXPECT_THROW(InitialPath(0, {}), Error);
  EXPECT_NO_THROW(InitialPath(0, {2, 1, 0, 1, 0, 1}));
}

TEST(InitialPath, FundamentalPathAlternates) {
  const auto p = fundamental_path(-2, 3);
  EXPECT_EQ(p.heights(), (std::vector<int>{0, 1, 0, 1, 0, 1}));
  EXPECT_TRUE(p.has_identity_labels());
  EXPECT_EQ(p.step(-2), Step::up);
  EXPECT_EQ(p.step(-1), Step::down);
  EXPECT_THROW(p.step(3), Error);
}

TEST(Projections, FlatPathExample) {
  const auto p = fundamental_path(1, 5);
  EXPECT_EQ(projections(p, {3, 3}), (Projection{1, 5}));
}

TEST(Projections, FlatSectionWidthGrowsLinearly) {
  const auto p = fundamental_path(-20, 20);
  for (int k = 2; k <= 10; ++k) {
    for (int j = -4; j <= 4; ++j) {
      if (!is_lattice_point(j, k)) continue;
      const auto pr = projections(p, {j, k});
      EXPECT_EQ(pr.j1 - pr.j0, 2 * k - 2) << j << "," << k;
      EXPECT_EQ(pr.j0 + pr.j1, 2 * j);
    }
  }
}

TEST(Projections, NonFlatExample) {
  const InitialPath p(0, {2, 1, 0, 1, 0, 1});
  EXPECT_EQ(projections(p, {2, 4}), (Projection{0, 5}));
}

TEST(Projections, OnPathPointProjectsToItself) {
  const auto p = fundamental_path(0, 6);
  EXPECT_EQ(projections(p, {3, 1}), (Projection{3, 3}));
  EXPECT_EQ(projections(p, {2, 0}), (Projection{2, 2}));
}

TEST(Projections, Errors) {
  const auto p = fundamental_path(0, 6);
  auto code = [&](LatticePoint q) {
    try {
      projections(p, q);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::parse_error;
  };
  EXPECT_EQ(code({3, 2}), Errc::bad_parity);
  EXPECT_EQ(code({2, -2}), Errc::below_path);
  EXPECT_EQ(code({3, 7}), Errc::out_of_window);
  EXPECT_EQ(code({9, 1}), Errc::out_of_window);
}

TEST(Projections, EndpointsLieOnTheLightCone) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const auto path = testing::random_path(rng, -6, 12);
    for (const auto& q : testing::solvable_points(path)) {
      const auto pr = projections(path, q);
      EXPECT_LT(pr.j0, q.j);
      EXPECT_GT(pr.j1, q.j);
      EXPECT_EQ(path.height(pr.j0) - pr.j0, q.k - q.j);
      EXPECT_EQ(path.height(pr.j1) + pr.j1, q.k + q.j);
    }
  }
}

TEST(Mutation, FlipsLocalMinimumAndMarksStale) {
  const auto p = fundamental_path(0, 4);
  const auto q = mutate(p, 2, +1);
  EXPECT_EQ(q.heights(), (std::vector<int>{0, 1, 2, 1, 0}));
  EXPECT_TRUE(q.stale(2));
  EXPECT_FALSE(q.stale(1));
  EXPECT_EQ(q.label(2), 2);
  EXPECT_EQ(mutate(q, 2, -1).heights(), p.heights());
}

TEST(Mutation, RejectsNonExtremalSites) {
  const auto p = fundamental_path(0, 4);
  EXPECT_THROW(mutate(p, 1, +1), Error);
  EXPECT_NO_THROW(mutate(p, 1, -1));
  EXPECT_THROW(mutate(p, 2, -1), Error);
  EXPECT_THROW(mutate(p, 7, 1), Error);
  EXPECT_THROW(mutate(p, 2, 2), Error);
  // End sites have only one neighbour to respect.
  EXPECT_NO_THROW(mutate(p, 0, 1));
}

TEST(Mutation, ClassicalValue) {
  EXPECT_EQ(classical_mutation_value(2, 3, 4), Rational(3));
  EXPECT_THROW(classical_mutation_value(1, 0, 1), Error);
}

TEST(PathSpec, ParsesBothForms) {
  EXPECT_EQ(parse_path_spec("flat:1..5"), fundamental_path(1, 5));
  const auto p = parse_path_spec("j0=0; heights=2,1,0,1,0,1");
  EXPECT_EQ(p.lo(), 0);
  EXPECT_EQ(p.heights(), (std::vector<int>{2, 1, 0, 1, 0, 1}));
  EXPECT_EQ(parse_path_spec(to_spec(p)), p);
  EXPECT_EQ(parse_point("-3, 5").j, -3);
  EXPECT_EQ(parse_point("-3, 5").k, 5);
}

TEST(PathSpec, RejectsGarbage) {
  EXPECT_THROW(parse_path_spec("flat:1-5"), Error);
  EXPECT_THROW(parse_path_spec("heights=1,2"), Error);
  EXPECT_THROW(parse_path_spec("j0=x; heights=0,1"), Error);
  EXPECT_THROW(parse_path_spec("j0=0; heights=0,2"), Error);
  EXPECT_THROW(parse_point("3"), Error);
  EXPECT_THROW(parse_point("3,a"), Error);
}

}  // namespace
}  // namespace ncts
