#pragma once

// Even integral lattices and divisor classes in a fixed basis.

#include "kvanish/integer.hpp"
#include "kvanish/matrix.hpp"

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace kvanish {

/// Integer coordinate vector relative to a lattice basis.
class DivisorClass {
 public:
  DivisorClass() = default;
  explicit DivisorClass(std::vector<Integer> coords) : coords_(std::move(coords)) {}
  DivisorClass(std::initializer_list<long long> coords) {
    coords_.reserve(coords.size());
    for (long long c : coords) coords_.emplace_back(c);
  }

  static DivisorClass zero(std::size_t rank) { return DivisorClass(std::vector<Integer>(rank)); }

  std::size_t size() const noexcept { return coords_.size(); }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  Integer& operator[](std::size_t i) { return coords_[i]; }
  std::span<const Integer> coords() const noexcept { return coords_; }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Integer& c) { return c == 0; });
  }

  DivisorClass& operator+=(const DivisorClass& o) {
    check_same_size(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  DivisorClass& operator-=(const DivisorClass& o) {
    check_same_size(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator-(DivisorClass a) {
    for (auto& c : a.coords_) c = -c;
    return a;
  }
  friend DivisorClass operator*(const Integer& k, DivisorClass a) {
    for (auto& c : a.coords_) c *= k;
    return a;
  }

  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) s += ",";
      s += coords_[i].str();
    }
    return s + ")";
  }
  friend std::ostream& operator<<(std::ostream& os, const DivisorClass& v) { return os << v.str(); }

 private:
  void check_same_size(const DivisorClass& o) const {
    if (o.size() != size()) throw DimensionError("divisor classes of different rank");
  }

  std::vector<Integer> coords_;
};

/// Canonical order on classes: lexicographically descending coordinates.
/// Every function returning a set of classes sorts it this way.
struct CanonicalOrder {
  bool operator()(const DivisorClass& a, const DivisorClass& b) const {
    return std::lexicographical_compare(b.coords().begin(), b.coords().end(),
                                        a.coords().begin(), a.coords().end());
  }
};

inline void canonical_sort(std::vector<DivisorClass>& v) {
  std::sort(v.begin(), v.end(), CanonicalOrder{});
}

class LatticeError : public Error {
 public:
  using Error::Error;
};

/// Even integral lattice given by its Gram matrix.
class Lattice {
 public:
  explicit Lattice(IntMatrix gram) : gram_(std::move(gram)) {
    if (!gram_.square()) throw LatticeError("gram matrix is not square");
    if (gram_.rows() == 0) throw LatticeError("lattice rank must be positive");
    if (!gram_.symmetric()) throw LatticeError("gram matrix is not symmetric");
    for (std::size_t i = 0; i < rank(); ++i)
      if (gram_(i, i) % 2 != 0) throw LatticeError("gram matrix has odd diagonal entry (lattice not even)");
  }
  Lattice(std::initializer_list<std::initializer_list<Integer>> gram) : Lattice(IntMatrix(gram)) {}

  std::size_t rank() const noexcept { return gram_.rows(); }
  const IntMatrix& gram() const noexcept { return gram_; }

  /// gram * v
  DivisorClass apply(const DivisorClass& v) const {
    check(v);
    std::vector<Integer> out(rank());
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j) out[i] += gram_(i, j) * v[j];
    return DivisorClass(std::move(out));
  }

  void check(const DivisorClass& v) const {
    if (v.size() != rank())
      throw DimensionError("class has " + std::to_string(v.size()) + " coordinates, lattice rank is " +
                           std::to_string(rank()));
  }

  friend bool operator==(const Lattice&, const Lattice&) = default;

 private:
  IntMatrix gram_;
};

inline Integer pair(const Lattice& lat, const DivisorClass& v, const DivisorClass& w) {
  lat.check(v);
  lat.check(w);
  Integer s = 0;
  for (std::size_t i = 0; i < lat.rank(); ++i) {
    if (v[i] == 0) continue;
    Integer row = 0;
    for (std::size_t j = 0; j < lat.rank(); ++j) row += lat.gram()(i, j) * w[j];
    s += v[i] * row;
  }
  return s;
}

inline Integer norm(const Lattice& lat, const DivisorClass& v) { return pair(lat, v, v); }

inline Signature signature(const Lattice& lat) { return linalg::inertia(lat.gram().cast<Rational>()); }

inline Integer determinant(const Lattice& lat) { return linalg::determinant(lat.gram()); }

inline bool is_hyperbolic(const Lattice& lat) {
  return signature(lat) == Signature{1, lat.rank() - 1, 0};
}

inline bool is_negative_definite(const IntMatrix& gram) {
  return linalg::inertia(gram.cast<Rational>()) == Signature{0, gram.rows(), 0};
}

/// gcd of the coordinates; 0 for the zero class.
inline Integer divisibility(const DivisorClass& v) {
  Integer g = 0;
  for (const auto& c : v.coords()) g = num::gcd(g, c);
  return g;
}

inline DivisorClass primitive_part(const DivisorClass& v) {
  const Integer g = divisibility(v);
  if (g == 0) throw PreconditionError("zero class has no primitive part");
  std::vector<Integer> out(v.coords().begin(), v.coords().end());
  for (auto& c : out) c /= g;
  return DivisorClass(std::move(out));
}

/// Integral basis of h-perp and the Gram matrix it induces.
struct OrthogonalComplement {
  std::vector<DivisorClass> basis;
  IntMatrix gram;
};

/// Basis of the integer kernel of w -> pair(w, h), in Hermite normal form.
inline OrthogonalComplement orthogonal_complement_basis(const Lattice& lat, const DivisorClass& h) {
  lat.check(h);
  if (h.is_zero()) throw PreconditionError("orthogonal complement of the zero class");
  const DivisorClass form = lat.apply(h);
  const auto red = linalg::reduce_row(form.coords());

  std::vector<std::vector<Integer>> rows;
  for (std::size_t c = 0; c < lat.rank(); ++c) {
    if (red.pivot && c == *red.pivot) continue;
    std::vector<Integer> col(lat.rank());
    for (std::size_t r = 0; r < lat.rank(); ++r) col[r] = red.transform(r, c);
    rows.push_back(std::move(col));
  }
  rows = linalg::hermite_rows(std::move(rows));

  OrthogonalComplement out;
  for (auto& r : rows) out.basis.emplace_back(std::move(r));
  const std::size_t k = out.basis.size();
  out.gram = IntMatrix(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j)
      out.gram(i, j) = out.gram(j, i) = pair(lat, out.basis[i], out.basis[j]);
  return out;
}

}  // namespace kvanish
