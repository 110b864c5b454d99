#pragma once

// Enumeration of norm -2 vectors: exhaustively in negative definite
// lattices, and degree by degree in hyperbolic lattices.

#include "kvanish/integer.hpp"
#include "kvanish/lattice.hpp"
#include "kvanish/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

namespace kvanish {

namespace detail {

/// Finds every integer y with (y - c)^T Q (y - c) == target for a positive
/// definite integer matrix Q, a rational center c and a rational target.
///
/// Fincke-Pohst style: Q is diagonalized over the rationals, and each
/// coordinate is bounded by the budget left after the coordinates already
/// fixed. Coordinates are visited in order of decreasing |Q_ii| (ties by
/// index).
class ShiftedFormEnumerator {
 public:
  explicit ShiftedFormEnumerator(const IntMatrix& q) : n_(q.rows()), perm_(q.rows()) {
    if (!q.symmetric()) throw DimensionError("form must be symmetric");
    std::vector<std::size_t> by_weight(n_);
    std::iota(by_weight.begin(), by_weight.end(), std::size_t{0});
    std::stable_sort(by_weight.begin(), by_weight.end(), [&](std::size_t a, std::size_t b) {
      return num::abs(q(a, a)) > num::abs(q(b, b));
    });
    // The innermost LDL index is visited first, so the heaviest coordinate
    // goes last in the permuted basis.
    for (std::size_t k = 0; k < n_; ++k) perm_[k] = by_weight[n_ - 1 - k];
    RatMatrix permuted(n_, n_);
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b) permuted(a, b) = Rational(q(perm_[a], perm_[b]));
    factor_ = linalg::ldl(permuted);
  }

  std::size_t dimension() const noexcept { return n_; }

  std::vector<std::vector<Integer>> solve(std::span<const Rational> center, const Rational& target) const {
    if (center.size() != n_) throw DimensionError("center has wrong dimension");
    std::vector<std::vector<Integer>> out;
    if (target < 0) return out;
    if (n_ == 0) {
      if (target == 0) out.emplace_back();
      return out;
    }
    std::vector<Rational> c(n_);
    for (std::size_t k = 0; k < n_; ++k) c[k] = center[perm_[k]];
    std::vector<Integer> y(n_);
    std::vector<Rational> z(n_);  // z_j = y_j - c_j for the fixed coordinates
    descend(n_ - 1, target, c, y, z, out);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void descend(std::size_t k, const Rational& budget, const std::vector<Rational>& c, std::vector<Integer>& y,
               std::vector<Rational>& z, std::vector<std::vector<Integer>>& out) const {
    Rational shift = 0;
    for (std::size_t j = k + 1; j < n_; ++j) shift += factor_.l(j, k) * z[j];
    const Rational mid = c[k] - shift;
    const Rational& dk = factor_.d[k];
    const Integer radius = num::isqrt(num::floor(Rational(budget / dk))) + 1;
    const Integer lo = num::ceil(Rational(mid - radius));
    const Integer hi = num::floor(Rational(mid + radius));
    for (Integer v = lo; v <= hi; ++v) {
      const Rational off = Rational(v) - mid;
      const Rational term = dk * off * off;
      if (term > budget) continue;
      const Rational rest = budget - term;
      y[k] = v;
      z[k] = Rational(v) - c[k];
      if (k == 0) {
        if (rest == 0) {
          std::vector<Integer> orig(n_);
          for (std::size_t t = 0; t < n_; ++t) orig[perm_[t]] = y[t];
          out.push_back(std::move(orig));
        }
      } else {
        descend(k - 1, rest, c, y, z, out);
      }
    }
  }

  std::size_t n_;
  std::vector<std::size_t> perm_;  // permuted index -> original index
  linalg::LdlFactor factor_;
};

}  // namespace detail

/// All v with v^T gram v == m, for a negative definite gram and m < 0.
/// The result is closed under negation and canonically sorted.
inline std::vector<DivisorClass> enum_fixed_norm_negdef(const IntMatrix& gram, const Integer& m) {
  if (!gram.square() || !gram.symmetric()) throw DimensionError("gram must be square and symmetric");
  if (!is_negative_definite(gram)) throw PreconditionError("form is not negative definite");
  if (m >= 0) throw PreconditionError("target norm must be negative");
  IntMatrix q(gram.rows(), gram.cols());
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) q(i, j) = -gram(i, j);
  const detail::ShiftedFormEnumerator e(q);
  const std::vector<Rational> origin(q.rows());
  std::vector<DivisorClass> out;
  for (auto& y : e.solve(origin, Rational(-m))) out.emplace_back(std::move(y));
  canonical_sort(out);
  return out;
}

/// Degree-graded root enumeration in a hyperbolic lattice.
///
/// For a class h of positive norm, the roots of a fixed h-degree d form a
/// coset of the negative definite lattice h-perp intersected with a
/// quadric, hence a finite set. Construction does the linear algebra once.
class RootSlicer {
 public:
  RootSlicer(Lattice lat, DivisorClass h) : lat_(std::move(lat)), h_(std::move(h)) {
    lat_.check(h_);
    if (norm(lat_, h_) <= 0) throw PreconditionError("degree class must have positive norm");
    if (!is_hyperbolic(lat_)) throw PreconditionError("lattice is not hyperbolic");

    const DivisorClass form = lat_.apply(h_);
    const auto red = linalg::reduce_row(form.coords());
    gcd_ = red.gcd;
    std::vector<Integer> unit(lat_.rank());
    for (std::size_t r = 0; r < lat_.rank(); ++r) unit[r] = red.transform(r, *red.pivot);
    unit_ = DivisorClass(std::move(unit));

    auto perp = orthogonal_complement_basis(lat_, h_);
    kernel_ = std::move(perp.basis);
    const std::size_t k = kernel_.size();
    IntMatrix q(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) q(i, j) = -perp.gram(i, j);
    q_inverse_ = k == 0 ? RatMatrix() : linalg::inverse(q.cast<Rational>());
    enumerator_.emplace(q);
  }

  const Lattice& lattice() const noexcept { return lat_; }
  const DivisorClass& degree_class() const noexcept { return h_; }

  Integer degree(const DivisorClass& v) const { return pair(lat_, v, h_); }

  /// All roots r with pair(r, h) == d, canonically sorted.
  std::vector<DivisorClass> roots(const Integer& d) const {
    if (d <= 0) throw PreconditionError("root degree must be positive");
    std::vector<DivisorClass> out;
    if (d % gcd_ != 0) return out;
    const DivisorClass base = Integer(d / gcd_) * unit_;

    const std::size_t k = kernel_.size();
    std::vector<Rational> b(k);
    for (std::size_t i = 0; i < k; ++i) b[i] = Rational(pair(lat_, kernel_[i], base));
    const std::vector<Rational> center = k == 0 ? std::vector<Rational>{} : linalg::multiply(q_inverse_, b);
    Rational target = Rational(norm(lat_, base) + 2);
    for (std::size_t i = 0; i < k; ++i) target += b[i] * center[i];

    for (const auto& y : enumerator_->solve(center, target)) {
      DivisorClass r = base;
      for (std::size_t i = 0; i < k; ++i)
        if (y[i] != 0) r += y[i] * kernel_[i];
      KVANISH_ASSERT(norm(lat_, r) == -2 && degree(r) == d, "root slice produced a non-root");
      out.push_back(std::move(r));
    }
    canonical_sort(out);
    return out;
  }

 private:
  Lattice lat_;
  DivisorClass h_;
  Integer gcd_;
  DivisorClass unit_;  // pair(unit_, h_) == gcd_
  std::vector<DivisorClass> kernel_;
  RatMatrix q_inverse_;
  std::optional<detail::ShiftedFormEnumerator> enumerator_;
};

inline std::vector<DivisorClass> roots_of_degree(const Lattice& lat, const DivisorClass& h, const Integer& d) {
  if (d <= 0) throw PreconditionError("root degree must be positive");
  return RootSlicer(lat, h).roots(d);
}

struct RootPairing {
  DivisorClass root;
  Integer degree;
  Integer pairing;

  friend bool operator==(const RootPairing&, const RootPairing&) = default;
};

/// Roots of degree 1..max_degree pairing negatively with l, ordered by
/// (degree, canonical order).
inline std::vector<RootPairing> negative_roots_against(const RootSlicer& slicer, const DivisorClass& l,
                                                       const Integer& max_degree) {
  std::vector<RootPairing> out;
  for (Integer d = 1; d <= max_degree; ++d) {
    for (auto& r : slicer.roots(d)) {
      Integer p = pair(slicer.lattice(), r, l);
      if (p < 0) out.push_back({std::move(r), d, std::move(p)});
    }
  }
  return out;
}

inline std::vector<RootPairing> negative_roots_against(const Lattice& lat, const DivisorClass& h,
                                                       const DivisorClass& l, const Integer& max_degree) {
  lat.check(l);
  return negative_roots_against(RootSlicer(lat, h), l, max_degree);
}

}  // namespace kvanish
