#include "fixtures.hpp"
#include "kvanish/oracle.hpp"

#include <gtest/gtest.h>

using namespace kvanish;
using namespace kvanish::testing;

TEST(BruteRootsBox, Examples) {
  EXPECT_EQ(oracle::brute_roots_box(hyperbolic_plane(), oracle::BoxBound(3)),
            (std::vector<DivisorClass>{{1, -1}, {-1, 1}}));
  EXPECT_EQ(oracle::brute_roots_box(Lattice{{-2, 1}, {1, -2}}, oracle::BoxBound(2)).size(), 6u);
  EXPECT_EQ(oracle::brute_roots_box(Lattice{{-2}}, oracle::BoxBound(1)), (std::vector<DivisorClass>{{1}, {-1}}));
  EXPECT_THROW(oracle::BoxBound(0), PreconditionError);
}

TEST(BoxForDegree, ContainsKnownRoots) {
  const auto box = oracle::box_for_degree(a2_lattice(), {3, -1, -1}, 14, -2);
  for (const auto& r : negative_roots_against(a2_lattice(), {3, -1, -1}, {1, 1, 1}, 14))
    for (const auto& c : r.root.coords()) EXPECT_LE(num::abs(c), box.bound);
}

TEST(BruteCase3Search, Examples) {
  const auto hit = oracle::brute_case3_search(k3_a2(), {{1, 1, 1}, 0}, 14);
  ASSERT_TRUE(hit);
  EXPECT_EQ(hit->root, (DivisorClass{0, 1, 1}));
  EXPECT_EQ(hit->pairing, -2);
  EXPECT_FALSE(oracle::brute_case3_search(k3_plane(), {{0, 4}, 0}, 8));
  EXPECT_FALSE(oracle::brute_case3_search(k3_a2(), {{3, -1, -1}, 0}, 14));
}

TEST(DefinitionQuasiNef, Examples) {
  EXPECT_FALSE(oracle::definition_quasi_nef(k3_a2(), {{1, 1, 1}, 0}));
  EXPECT_TRUE(oracle::definition_quasi_nef(k3_plane(), {{0, 2}, 0}));
  EXPECT_TRUE(oracle::definition_quasi_nef(k3_a2(), {{1, 0, 0}, 0}));
}

TEST(CrossValidate, HyperbolicPlane) {
  const auto rep = oracle::cross_validate(k3_plane(), 6);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.bundles, 15u);
  EXPECT_EQ(rep.counts.at(H1Case::Vanishes), 8u);
  EXPECT_EQ(rep.counts.at(H1Case::CaseI), 5u);
  EXPECT_EQ(rep.counts.at(H1Case::CaseIII), 2u);
}

TEST(CrossValidate, A2Lattice) {
  const auto rep = oracle::cross_validate(k3_a2(), 14);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.counts.at(H1Case::Vanishes), 4u);
  EXPECT_EQ(rep.counts.at(H1Case::CaseIII), 3u);
  EXPECT_GT(rep.chain_steps, 0u);
}

TEST(CrossValidate, RankOne) {
  const SurfaceContext ctx(SurfaceKind::K3, Lattice{{2}}, {1});
  // Degrees are even here: (1) and (2) only.
  const auto rep = oracle::cross_validate(ctx, 5);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.bundles, 2u);
}

TEST(CrossValidate, EnriquesFixtures) {
  const auto a = oracle::cross_validate(enriques_plane(), 6);
  EXPECT_TRUE(a.ok());
  EXPECT_EQ(a.bundles % 2, 0u);
  const auto b = oracle::cross_validate(enriques_a2_nodal(), 10);
  EXPECT_TRUE(b.ok());
}
