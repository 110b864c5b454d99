#pragma once

// Brute-force cross-checks for the root enumerator and the classifier.
// Everything here is exponential in the rank and meant for validation on
// small instances only.

#include "kvanish/integer.hpp"
#include "kvanish/lattice.hpp"
#include "kvanish/matrix.hpp"
#include "kvanish/roots.hpp"
#include "kvanish/surface.hpp"
#include "kvanish/vanishing.hpp"

#include <cstdint>
#include <algorithm>
#include <functional>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace kvanish::oracle {

/// Per-coordinate cap for a box scan.
struct BoxBound {
  Integer bound;

  explicit BoxBound(Integer b) : bound(std::move(b)) {
    if (bound < 1) throw PreconditionError("box bound must be at least 1");
  }
};

namespace detail {

template <typename Scalar, typename Visit>
void scan(const IntMatrix& gram, long long b, Visit&& visit) {
  const std::size_t n = gram.rows();
  std::vector<Scalar> g(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i * n + j] = static_cast<Scalar>(gram(i, j));
  std::vector<long long> x(n, -b);
  while (true) {
    Scalar q = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      Scalar row = 0;
      for (std::size_t j = 0; j < n; ++j) row += g[i * n + j] * Scalar(x[j]);
      q += Scalar(x[i]) * row;
    }
    visit(x, q);
    std::size_t k = 0;
    while (k < n && x[k] == b) x[k++] = -b;
    if (k == n) return;
    ++x[k];
  }
}

/// Calls visit(coords, norm) for every vector in the box |x_i| <= bound.
/// Uses 64-bit arithmetic when no overflow is possible.
template <typename Visit>
void scan_box(const Lattice& lat, const Integer& bound, Visit&& visit) {
  if (bound > 1'000'000) throw PreconditionError("box bound too large for a brute-force scan");
  const long long b = static_cast<long long>(bound);
  Integer gmax = 0;
  for (std::size_t i = 0; i < lat.rank(); ++i)
    for (std::size_t j = 0; j < lat.rank(); ++j) gmax = std::max(gmax, num::abs(lat.gram()(i, j)));
  const Integer worst = gmax * Integer(lat.rank() * lat.rank()) * bound * bound;
  if (worst < (Integer(1) << 62)) {
    scan<long long>(lat.gram(), b, [&](const std::vector<long long>& x, long long q) { visit(x, Integer(q)); });
  } else {
    scan<Integer>(lat.gram(), b, [&](const std::vector<long long>& x, const Integer& q) { visit(x, q); });
  }
}

inline DivisorClass to_class(const std::vector<long long>& x) {
  std::vector<Integer> c(x.begin(), x.end());
  return DivisorClass(std::move(c));
}

}  // namespace detail

/// Every vector with |x_i| <= bound and norm -2, canonically sorted.
inline std::vector<DivisorClass> brute_roots_box(const Lattice& lat, const BoxBound& box) {
  std::vector<DivisorClass> out;
  detail::scan_box(lat, box.bound, [&](const std::vector<long long>& x, const Integer& q) {
    if (q == -2) out.push_back(detail::to_class(x));
  });
  canonical_sort(out);
  return out;
}

/// A box containing every x with norm(x) >= min_norm and |pair(x, h)| <= max_degree.
///
/// The form P(x) = 2 pair(x,h)^2 / h^2 - norm(x) is positive definite on a
/// hyperbolic lattice, and P(x) <= 2 D^2 / h^2 - min_norm on the region, so
/// x_i^2 <= budget * (P^-1)_ii.
inline BoxBound box_for_degree(const Lattice& lat, const DivisorClass& h, const Integer& max_degree,
                               const Integer& min_norm) {
  const Integer hh = norm(lat, h);
  if (hh <= 0) throw PreconditionError("degree class must have positive norm");
  const DivisorClass gh = lat.apply(h);
  const std::size_t n = lat.rank();
  RatMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p(i, j) = Rational(2 * gh[i] * gh[j]) / Rational(hh) - Rational(lat.gram()(i, j));
  const RatMatrix pinv = linalg::inverse(p);
  const Rational budget = Rational(2 * max_degree * max_degree) / Rational(hh) - Rational(min_norm);
  Integer b = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational cap = budget * pinv(i, i);
    if (cap > 0) b = std::max(b, num::isqrt(num::floor(cap)));
  }
  return BoxBound(b);
}

/// Roots r with 1 <= pair(r, h) <= max_degree, found by box scan.
inline std::vector<DivisorClass> brute_roots_up_to_degree(const Lattice& lat, const DivisorClass& h,
                                                          const Integer& max_degree) {
  std::vector<DivisorClass> out;
  for (auto& r : brute_roots_box(lat, box_for_degree(lat, h, max_degree, -2))) {
    const Integer d = pair(lat, r, h);
    if (d >= 1 && d <= max_degree) out.push_back(std::move(r));
  }
  return out;
}

/// Symmetric difference between the graded root enumerator and the box scan
/// over degrees 1..max_degree.
inline std::vector<DivisorClass> root_slice_discrepancies(const Lattice& lat, const DivisorClass& h,
                                                          const Integer& max_degree) {
  const RootSlicer slicer(lat, h);
  std::set<DivisorClass, CanonicalOrder> graded;
  for (Integer d = 1; d <= max_degree; ++d)
    for (auto& r : slicer.roots(d)) graded.insert(std::move(r));
  std::set<DivisorClass, CanonicalOrder> brute;
  for (auto& r : brute_roots_up_to_degree(lat, h, max_degree)) brute.insert(std::move(r));
  std::vector<DivisorClass> diff;
  std::set_symmetric_difference(graded.begin(), graded.end(), brute.begin(), brute.end(), std::back_inserter(diff),
                                CanonicalOrder{});
  return diff;
}

/// First effective root (degree, then canonical order) of degree at most
/// max_degree pairing <= -2 with l.
inline std::optional<RootPairing> brute_case3_search(const SurfaceContext& ctx, const LineBundleClass& l,
                                                     const Integer& max_degree) {
  ctx.check(l);
  for (Integer d = 1; d <= max_degree; ++d)
    for (auto& r : effective_roots_of_degree(ctx, d)) {
      Integer p = ctx.pair(r, l.cls);
      if (p <= -2) return RootPairing{std::move(r), d, std::move(p)};
    }
  return std::nullopt;
}

/// Quasi-nefness straight from the definition: nonnegative square and no
/// effective root of degree <= pair(L, H) pairing <= -2.
inline bool definition_quasi_nef(const SurfaceContext& ctx, const LineBundleClass& l) {
  if (ctx.norm(l.cls) < 0) return false;
  for (const auto& rp : negative_roots_against(ctx.slicer(), l.cls, ctx.degree(l.cls))) {
    if (rp.pairing > -2) continue;
    if (is_effective(ctx, {rp.root, 0}) == Effectivity::Effective) return false;
  }
  return true;
}

/// Nefness via box-scanned roots, independent of the graded enumerator.
inline bool brute_is_nef(const SurfaceContext& ctx, const DivisorClass& cls) {
  if (ctx.kind() == SurfaceKind::Enriques && ctx.mode() == NodalMode::Unnodal) return true;
  for (const auto& r : brute_roots_up_to_degree(ctx.lattice(), ctx.ample(), ctx.degree(cls)))
    if (ctx.pair(r, cls) < 0 && is_effective(ctx, {r, 0}) == Effectivity::Effective) return false;
  return true;
}

/// Expected case for L without a case (iii) obstruction, from the
/// isotropic-multiple test alone.
inline std::pair<H1Case, Integer> expected_without_obstruction(const SurfaceContext& ctx, const LineBundleClass& l) {
  if (ctx.norm(l.cls) != 0 || !brute_is_nef(ctx, l.cls)) return {H1Case::Vanishes, 0};
  const Integer n = divisibility(l.cls);
  if (n < 2) return {H1Case::Vanishes, 0};
  if (ctx.kind() == SurfaceKind::K3) return {H1Case::CaseI, n - 1};
  const int bit = l.torsion ^ (ctx.torsion_flipped(primitive_part(l.cls)) ? 1 : 0);
  if (bit == 0 || n % 2 == 1) return {H1Case::CaseI, n / 2};
  if (n == 2) return {H1Case::Vanishes, 0};
  return {H1Case::CaseII, (n - 1) / 2};
}

/// Effective classes of nonnegative square and degree 1..cap, canonically
/// sorted. On Enriques surfaces both torsion bits are listed.
inline std::vector<LineBundleClass> effective_classes(const SurfaceContext& ctx, const Integer& cap) {
  std::vector<DivisorClass> found;
  detail::scan_box(ctx.lattice(), box_for_degree(ctx.lattice(), ctx.ample(), cap, 0).bound,
                   [&](const std::vector<long long>& x, const Integer& q) {
                     if (q < 0) return;
                     DivisorClass c = detail::to_class(x);
                     const Integer d = ctx.degree(c);
                     if (d >= 1 && d <= cap) found.push_back(std::move(c));
                   });
  canonical_sort(found);
  std::vector<LineBundleClass> out;
  for (auto& c : found) {
    out.push_back({c, 0});
    if (ctx.kind() == SurfaceKind::Enriques) out.push_back({c, 1});
  }
  return out;
}

struct CrossValidationReport {
  std::size_t bundles = 0;
  std::map<H1Case, std::size_t> counts;
  std::size_t chains = 0;
  std::size_t chain_steps = 0;
  std::vector<std::string> mismatches;  // classifier vs brute force
  std::vector<std::string> quasi_nef_mismatches;
  std::vector<std::string> invariant_failures;  // chain invariants, Riemann-Roch, certificates

  bool ok() const { return mismatches.empty() && quasi_nef_mismatches.empty() && invariant_failures.empty(); }
};

/// Classifies every effective class of nonnegative square and degree
/// 1..degree_cap and compares against the exhaustive searches above.
inline CrossValidationReport cross_validate(const SurfaceContext& ctx, const Integer& degree_cap) {
  CrossValidationReport rep;
  for (const auto& l : effective_classes(ctx, degree_cap)) {
    ++rep.bundles;
    const std::string tag = l.cls.str() + (l.torsion ? "+K" : "");
    H1Classification c;
    try {
      c = classify_h1(ctx, l);
    } catch (const Error& e) {
      rep.invariant_failures.push_back(tag + ": classify_h1 threw: " + e.what());
      continue;
    }
    ++rep.counts[c.kind];
    ++rep.chains;
    rep.chain_steps += c.reduction.steps.size();

    const auto hit = brute_case3_search(ctx, l, ctx.degree(l.cls));
    if ((c.kind == H1Case::CaseIII) != hit.has_value())
      rep.mismatches.push_back(tag + ": classifier says " + to_string(c.kind) + ", exhaustive search " +
                               (hit ? "found " + hit->root.str() : std::string("found nothing")));
    if (!hit) {
      const auto [kind, h1] = expected_without_obstruction(ctx, l);
      if (kind != c.kind || h1 != c.h1)
        rep.mismatches.push_back(tag + ": classifier says " + to_string(c.kind) + " h1=" + c.h1.str() +
                                 ", isotropic-multiple test says " + to_string(kind) + " h1=" + h1.str());
    }

    const bool qn = c.kind != H1Case::CaseIII;
    if (qn != definition_quasi_nef(ctx, l)) rep.quasi_nef_mismatches.push_back(tag);

    for (auto& v : verify_chain(ctx, c.reduction)) rep.invariant_failures.push_back(tag + ": " + v);
    if (c.h0 - c.h1 + c.h2 != euler_char(ctx, l)) rep.invariant_failures.push_back(tag + ": Riemann-Roch");
    if (c.kind == H1Case::CaseIII &&
        (ctx.norm(*c.witness) != -2 || ctx.pair(*c.witness, l.cls) > -2 || ctx.degree(*c.witness) <= 0))
      rep.invariant_failures.push_back(tag + ": witness certificate");
  }
  return rep;
}

}  // namespace kvanish::oracle
