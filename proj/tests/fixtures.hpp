#pragma once

#include "kvanish/kvanish.hpp"

#include <random>
#include <vector>

namespace kvanish::testing {

// Hyperbolic plane U.
inline Lattice hyperbolic_plane() { return Lattice{{0, 1}, {1, 0}}; }

// <4> + A2(-1): a nef class B with B^2 = 4 and two (-2)-curves R1, R2 with
// B.Ri = 0, R1.R2 = 1.
inline Lattice a2_lattice() { return Lattice{{4, 0, 0}, {0, -2, 1}, {0, 1, -2}}; }

inline SurfaceContext k3_plane() { return SurfaceContext(SurfaceKind::K3, hyperbolic_plane(), {1, 2}); }
inline SurfaceContext k3_a2() { return SurfaceContext(SurfaceKind::K3, a2_lattice(), {3, -1, -1}); }
inline SurfaceContext enriques_plane() {
  return SurfaceContext(SurfaceKind::Enriques, hyperbolic_plane(), {1, 2});
}
inline SurfaceContext enriques_a2_nodal() {
  SurfaceOptions o;
  o.mode = NodalMode::DeclaredNodal;
  o.nodal = {{0, 1, 0}, {0, 0, 1}};
  return SurfaceContext(SurfaceKind::Enriques, a2_lattice(), {3, -1, -1}, o);
}

inline DivisorClass random_class(std::mt19937_64& rng, std::size_t rank, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  std::vector<Integer> c(rank);
  for (auto& x : c) x = dist(rng);
  return DivisorClass(std::move(c));
}

// Random even symmetric matrix with entries in [-bound, bound].
inline IntMatrix random_even_gram(std::mt19937_64& rng, std::size_t rank, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  std::uniform_int_distribution<int> half(-bound / 2, bound / 2);
  IntMatrix g(rank, rank);
  for (std::size_t i = 0; i < rank; ++i) {
    g(i, i) = 2 * half(rng);
    for (std::size_t j = i + 1; j < rank; ++j) g(i, j) = g(j, i) = dist(rng);
  }
  return g;
}

// Random unimodular matrix as a product of elementary operations.
inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int ops = 8) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int k = 0; k < ops; ++k) {
    const std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    const int c = coef(rng);
    for (std::size_t r = 0; r < n; ++r) u(r, i) += c * u(r, j);
  }
  return u;
}

inline IntMatrix congruent(const IntMatrix& g, const IntMatrix& u) {
  const std::size_t n = g.rows();
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Integer s = 0;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) s += u(a, i) * g(a, b) * u(b, j);
      out(i, j) = s;
    }
  return out;
}

// Random hyperbolic even lattice of rank 2..max_rank with a validated ample
// class found among small vectors; retries until one exists.
struct RandomSurface {
  Lattice lattice;
  DivisorClass ample;
};

inline RandomSurface random_hyperbolic_with_ample(std::mt19937_64& rng, std::size_t max_rank, int bound) {
  std::uniform_int_distribution<std::size_t> rank_dist(2, max_rank);
  while (true) {
    const std::size_t rank = rank_dist(rng);
    Lattice lat(random_even_gram(rng, rank, bound));
    if (!is_hyperbolic(lat)) continue;
    for (int attempt = 0; attempt < 40; ++attempt) {
      DivisorClass h = random_class(rng, rank, 3);
      if (h.is_zero() || norm(lat, h) <= 0) continue;
      if (!validate_ample(lat, h)) return {lat, h};
    }
  }
}

}  // namespace kvanish::testing
