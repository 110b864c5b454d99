#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace kvanish;
using namespace kvanish::testing;

TEST(Pair, HyperbolicPlaneBasis) {
  EXPECT_EQ(pair(hyperbolic_plane(), {1, 0}, {0, 1}), 1);
  EXPECT_EQ(pair(hyperbolic_plane(), {1, -1}, {1, -1}), -2);
}

TEST(Pair, A2LatticeRootSum) {
  // L = B + R1 + R2 against R1 + R2.
  EXPECT_EQ(pair(a2_lattice(), {1, 1, 1}, {0, 1, 1}), -2);
}

TEST(Pair, DimensionMismatchThrows) {
  EXPECT_THROW(pair(hyperbolic_plane(), {1, 0, 0}, {0, 1}), DimensionError);
  EXPECT_THROW(norm(a2_lattice(), {1, 0}), DimensionError);
}

TEST(Norm, Examples) {
  EXPECT_EQ(norm(hyperbolic_plane(), {1, 1}), 2);
  EXPECT_EQ(norm(a2_lattice(), {1, 1, 1}), 2);
  for (long long n : {-7LL, 0LL, 1LL, 12LL}) EXPECT_EQ(norm(hyperbolic_plane(), {0, n}), 0);
}

TEST(Lattice, RejectsAsymmetricAndOdd) {
  EXPECT_THROW(Lattice({{0, 1}, {2, 0}}), LatticeError);
  EXPECT_THROW(Lattice({{1, 0}, {0, -2}}), LatticeError);
  EXPECT_THROW(Lattice(IntMatrix(2, 3)), LatticeError);
}

TEST(Signature, Examples) {
  EXPECT_EQ(signature(hyperbolic_plane()), (Signature{1, 1, 0}));
  EXPECT_EQ(signature(a2_lattice()), (Signature{1, 2, 0}));
  EXPECT_EQ(signature(Lattice{{-2}}), (Signature{0, 1, 0}));
  EXPECT_EQ(signature(Lattice{{0, 0}, {0, 0}}), (Signature{0, 0, 2}));
  // Zero diagonal throughout forces the off-diagonal pivot path.
  EXPECT_EQ(signature(Lattice{{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}), (Signature{1, 1, 1}));
}

TEST(Signature, InvariantUnderUnimodularChange) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const std::size_t rank = 1 + t % 5;
    const IntMatrix g = random_even_gram(rng, rank, 6);
    const Signature s = linalg::inertia(g.cast<Rational>());
    EXPECT_EQ(s.positive + s.negative + s.zero, rank);
    const IntMatrix g2 = congruent(g, random_unimodular(rng, rank));
    EXPECT_EQ(linalg::inertia(g2.cast<Rational>()), s);
  }
}

TEST(Divisibility, Examples) {
  EXPECT_EQ(divisibility({2, 4}), 2);
  EXPECT_EQ(primitive_part({2, 4}), (DivisorClass{1, 2}));
  EXPECT_EQ(divisibility({3, 5}), 1);
  EXPECT_EQ(primitive_part({3, 5}), (DivisorClass{3, 5}));
  EXPECT_EQ(divisibility({0, 0}), 0);
  EXPECT_THROW(primitive_part({0, 0}), PreconditionError);
  EXPECT_EQ(primitive_part({-6, 9}), (DivisorClass{-2, 3}));
}

TEST(Divisibility, PrimitivePartProperty) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 500; ++t) {
    DivisorClass v = random_class(rng, 4, 30);
    if (v.is_zero()) continue;
    const auto p = primitive_part(v);
    EXPECT_EQ(divisibility(p), 1);
    EXPECT_EQ(divisibility(v) * p, v);
  }
}

TEST(OrthogonalComplement, Examples) {
  auto a = orthogonal_complement_basis(hyperbolic_plane(), {1, 2});
  ASSERT_EQ(a.basis.size(), 1u);
  EXPECT_EQ(a.basis[0], (DivisorClass{1, -2}));
  EXPECT_EQ(a.gram, (IntMatrix{{-4}}));

  auto b = orthogonal_complement_basis(hyperbolic_plane(), {1, 0});
  ASSERT_EQ(b.basis.size(), 1u);
  EXPECT_EQ(b.basis[0], (DivisorClass{1, 0}));
  EXPECT_EQ(b.gram, (IntMatrix{{0}}));

  auto c = orthogonal_complement_basis(Lattice{{-2}}, {1});
  EXPECT_TRUE(c.basis.empty());

  EXPECT_THROW(orthogonal_complement_basis(hyperbolic_plane(), {0, 0}), PreconditionError);
}

TEST(OrthogonalComplement, BasisIsOrthogonalIndependentAndSaturated) {
  std::mt19937_64 rng(3);
  int checked = 0;
  while (checked < 150) {
    const std::size_t rank = 2 + checked % 4;
    Lattice lat(random_even_gram(rng, rank, 6));
    DivisorClass h = random_class(rng, rank, 4);
    if (h.is_zero() || norm(lat, h) == 0) continue;
    ++checked;
    const auto perp = orthogonal_complement_basis(lat, h);
    const bool radical = lat.apply(h).is_zero();
    EXPECT_EQ(perp.basis.size(), radical ? rank : rank - 1);
    for (const auto& b : perp.basis) EXPECT_EQ(pair(lat, b, h), 0);
    // Hermite form: strictly increasing pivots, so the rows are independent.
    std::size_t last = 0;
    for (std::size_t i = 0; i < perp.basis.size(); ++i) {
      std::size_t p = 0;
      while (perp.basis[i][p] == 0) ++p;
      EXPECT_GT(perp.basis[i][p], 0);
      if (i) {
        EXPECT_GT(p, last);
      }
      last = p;
    }
  }
}

TEST(OrthogonalComplement, NegativeDefiniteForHyperbolicAmple) {
  auto perp = orthogonal_complement_basis(a2_lattice(), {3, -1, -1});
  EXPECT_EQ(perp.basis.size(), 2u);
  EXPECT_TRUE(is_negative_definite(perp.gram));
}

TEST(Pair, BilinearSymmetricProperty) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    const std::size_t rank = 1 + t % 6;
    Lattice lat(random_even_gram(rng, rank, 6));
    const auto u = random_class(rng, rank, 9), v = random_class(rng, rank, 9), w = random_class(rng, rank, 9);
    std::uniform_int_distribution<int> cd(-7, 7);
    const Integer a = cd(rng), b = cd(rng);
    EXPECT_EQ(pair(lat, v, w), pair(lat, w, v));
    EXPECT_EQ(pair(lat, a * v + b * w, u), a * pair(lat, v, u) + b * pair(lat, w, u));
    EXPECT_EQ(norm(lat, v + w), norm(lat, v) + norm(lat, w) + 2 * pair(lat, v, w));
    EXPECT_EQ(norm(lat, v) % 2, 0);
  }
}

TEST(Pair, BigCoordinatesStayExact) {
  Lattice lat{{0, 1}, {1, 0}};
  const DivisorClass v(std::vector<Integer>{Integer("123456789012345678901234567890"), Integer(3)});
  EXPECT_EQ(norm(lat, v), Integer("740740734074074073407407407340"));
}

TEST(Determinant, Examples) {
  EXPECT_EQ(determinant(hyperbolic_plane()), -1);
  EXPECT_EQ(determinant(a2_lattice()), 12);
}

TEST(Hermite, ReducesAboveAndDropsZeroRows) {
  const auto h = linalg::hermite_rows({{Integer(2), Integer(4)}, {Integer(1), Integer(3)}, {Integer(3), Integer(7)}});
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(h[0], (std::vector<Integer>{1, 1}));
  EXPECT_EQ(h[1], (std::vector<Integer>{0, 2}));
}

TEST(ReduceRow, ParticularSolutionAndKernel) {
  const std::vector<Integer> c{6, 10, 15};
  const auto red = linalg::reduce_row(c);
  EXPECT_EQ(red.gcd, 1);
  ASSERT_TRUE(red.pivot);
  for (std::size_t col = 0; col < 3; ++col) {
    Integer s = 0;
    for (std::size_t r = 0; r < 3; ++r) s += c[r] * red.transform(r, col);
    EXPECT_EQ(s, col == *red.pivot ? red.gcd : Integer(0));
  }
  EXPECT_EQ(num::abs(linalg::determinant(red.transform)), 1);
}
