#pragma once

// Classification of H^1 vanishing for line bundles with nonnegative square
// on K3 and Enriques surfaces, via nef reduction.
//
// A bundle L with L^2 >= 0, L effective, has h^1(L) != 0 exactly when
//   (i)   L = nE, E primitive nef isotropic, n >= 2
//         (h^1 = n - 1 on K3, floor(n/2) on Enriques),
//   (ii)  L = nE + K_X on an Enriques surface, n >= 3 (h^1 = floor((n-1)/2)),
//   (iii) some effective root D has D.L <= -2.
//
// nef_reduce removes minimal-degree effective roots Gamma with Gamma.L < 0
// one at a time. Each such Gamma is an irreducible fixed component, so h^0
// is unchanged and h^1 moves by the Riemann-Roch difference -Gamma.L - 1.

#include "kvanish/integer.hpp"
#include "kvanish/lattice.hpp"
#include "kvanish/roots.hpp"
#include "kvanish/surface.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace kvanish {

struct ReductionStep {
  DivisorClass gamma;
  Integer degree;   // pair(gamma, H)
  Integer pairing;  // pair(gamma, before) < 0
  LineBundleClass before;
  LineBundleClass after;
};

struct ReductionChain {
  LineBundleClass initial;
  std::vector<ReductionStep> steps;
  LineBundleClass final;
  bool bounded = false;  // degree bound came from SearchOptions

  /// Class at stage k: the initial class for k == 0, final for k == size.
  const LineBundleClass& stage(std::size_t k) const { return k < steps.size() ? steps[k].before : final; }
};

inline ReductionChain nef_reduce(const SurfaceContext& ctx, const LineBundleClass& l, const SearchOptions& opts = {}) {
  ctx.check(l);
  if (is_effective(ctx, l) != Effectivity::Effective) throw PreconditionError("nef_reduce requires an effective class");
  if (ctx.norm(l.cls) < 0) throw PreconditionError("nef_reduce requires nonnegative square");

  ReductionChain chain{l, {}, l, opts.bounded()};
  LineBundleClass cur = l;
  while (true) {
    const Integer bound =
        std::min(opts.max_degree.value_or(ctx.degree(cur.cls)), negative_root_degree_bound(ctx, cur.cls));
    auto gamma = first_negative_effective_root(ctx, cur.cls, bound);
    if (!gamma) break;
    LineBundleClass next{cur.cls - gamma->root, cur.torsion};
    KVANISH_ASSERT(ctx.degree(next.cls) < ctx.degree(cur.cls), "reduction failed to lower the degree");
    KVANISH_ASSERT(ctx.degree(next.cls) > 0, "reduction left the effective cone");
    chain.steps.push_back({std::move(gamma->root), std::move(gamma->degree), std::move(gamma->pairing), cur, next});
    cur = std::move(next);
  }
  chain.final = cur;
  return chain;
}

struct IsotropicType {
  Integer n;
  DivisorClass e;

  friend bool operator==(const IsotropicType&, const IsotropicType&) = default;
};

/// Splits a nef isotropic class as n * E with E primitive.
inline IsotropicType isotropic_type(const SurfaceContext& ctx, const LineBundleClass& m) {
  ctx.check(m);
  if (m.cls.is_zero()) throw PreconditionError("isotropic_type of the zero class");
  const Integer sq = ctx.norm(m.cls);
  if (sq != 0) throw PreconditionError("isotropic_type requires norm 0, got norm " + sq.str());
  if (is_effective(ctx, m) != Effectivity::Effective) throw PreconditionError("isotropic_type requires an effective class");
  return {divisibility(m.cls), primitive_part(m.cls)};
}

/// Pulls a root with pairing <= -2 against stage `stage` of the chain back to
/// a root with pairing <= -2 against the initial class. At each earlier stage
/// whose pairing is only -1, the subtracted root is added back in.
inline DivisorClass lift_witness(const SurfaceContext& ctx, const ReductionChain& chain, DivisorClass delta,
                                 std::size_t stage) {
  if (stage > chain.steps.size()) throw PreconditionError("stage index out of range");
  if (ctx.pair(delta, chain.stage(stage).cls) > -2)
    throw PreconditionError("witness does not pair <= -2 with its stage");
  for (std::size_t k = stage; k-- > 0;) {
    const auto& step = chain.steps[k];
    if (ctx.pair(delta, step.before.cls) <= -2) continue;
    delta += step.gamma;
  }
  KVANISH_ASSERT(ctx.norm(delta) == -2, "lifted witness " + delta.str() + " is not a root");
  KVANISH_ASSERT(ctx.pair(delta, chain.initial.cls) <= -2, "lifted witness " + delta.str() + " pairs > -2");
  KVANISH_ASSERT(is_effective(ctx, {delta, 0}) == Effectivity::Effective,
                 "lifted witness " + delta.str() + " is not effective");
  return delta;
}

enum class H1Case { Vanishes, CaseI, CaseII, CaseIII };

inline const char* to_string(H1Case c) {
  switch (c) {
    case H1Case::Vanishes: return "Vanishes";
    case H1Case::CaseI: return "CaseI";
    case H1Case::CaseII: return "CaseII";
    case H1Case::CaseIII: return "CaseIII";
  }
  return "";
}

struct H1Classification {
  H1Case kind = H1Case::Vanishes;
  std::optional<IsotropicType> isotropic;  // CaseI / CaseII data (n, E)
  std::optional<DivisorClass> witness;     // CaseIII certificate
  Integer witness_pairing;
  Integer h0, h1, h2, chi;
  ReductionChain reduction;
  bool conditional = false;  // Enriques with declared nodal curves
  bool bounded = false;      // degree bound overridden by the caller
  // h^1 includes fixed-component corrections beyond the first reduction step.
  bool exact_h1_via_reduction = false;
};

namespace detail {

struct NefTypeH1 {
  H1Case kind;
  std::optional<IsotropicType> isotropic;
  Integer h1;
};

/// h^1 of a nef effective class of nonnegative square.
inline NefTypeH1 nef_class_h1(const SurfaceContext& ctx, const LineBundleClass& m) {
  if (ctx.norm(m.cls) > 0) return {H1Case::Vanishes, std::nullopt, 0};
  auto iso = isotropic_type(ctx, m);
  const Integer n = iso.n;
  if (n == 1) return {H1Case::Vanishes, std::move(iso), 0};
  if (ctx.kind() == SurfaceKind::K3) return {H1Case::CaseI, std::move(iso), n - 1};
  // Half-fiber convention: E and E + K_X are both effective, so nE + K_X is
  // again an odd multiple of a half-fiber when n is odd.
  const int bit = m.torsion ^ (ctx.torsion_flipped(iso.e) ? 1 : 0);
  if (n % 2 == 1 || bit == 0) return {H1Case::CaseI, std::move(iso), n / 2};
  if (n == 2) return {H1Case::Vanishes, std::move(iso), 0};
  return {H1Case::CaseII, std::move(iso), (n - 1) / 2};
}

}  // namespace detail

inline H1Classification classify_h1(const SurfaceContext& ctx, const LineBundleClass& l, const SearchOptions& opts = {}) {
  ctx.check(l);
  if (l.cls.is_zero()) throw PreconditionError("classify_h1 requires a nonzero class");
  if (ctx.norm(l.cls) < 0) throw PreconditionError("classify_h1 requires nonnegative square");
  switch (is_effective(ctx, l)) {
    case Effectivity::Effective: break;
    case Effectivity::NotEffective: throw PreconditionError("class " + l.cls.str() + " is not effective");
    case Effectivity::Undecidable: throw PreconditionError("effectivity of " + l.cls.str() + " is undecidable");
  }

  H1Classification out;
  out.reduction = nef_reduce(ctx, l, opts);
  out.conditional = ctx.conditional();
  out.bounded = opts.bounded();
  const auto& steps = out.reduction.steps;

  Integer correction = 0;
  std::optional<std::size_t> first_big;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    correction += -steps[k].pairing - 1;
    if (!first_big && steps[k].pairing <= -2) first_big = k;
  }

  auto final_type = detail::nef_class_h1(ctx, out.reduction.final);
  if (first_big) {
    out.kind = H1Case::CaseIII;
    out.witness = lift_witness(ctx, out.reduction, steps[*first_big].gamma, *first_big);
    out.witness_pairing = ctx.pair(*out.witness, l.cls);
    out.h1 = final_type.h1 + correction;
    out.exact_h1_via_reduction = true;
  } else {
    KVANISH_ASSERT(correction == 0, "pairing -1 steps must not change chi");
    // After a pairing -1 step the final class M has M.Gamma = 1, so it
    // cannot be a multiple n >= 2 of an isotropic class.
    KVANISH_ASSERT(steps.empty() || final_type.kind == H1Case::Vanishes,
                   "reduced class is a multiple isotropic class after a -1 step");
    out.kind = final_type.kind;
    out.isotropic = std::move(final_type.isotropic);
    out.h1 = final_type.h1;
  }
  out.chi = euler_char(ctx, l);
  out.h2 = h2(ctx, l);
  out.h0 = out.chi + out.h1 - out.h2;
  return out;
}

struct QuasiNefReport {
  bool quasi_nef = false;
  std::optional<DivisorClass> witness;
  std::optional<IsotropicType> isotropic;
  H1Classification classification;
};

/// L is quasi-nef iff h^1(L) = 0 or L is numerically n*E with E primitive
/// nef isotropic; otherwise an effective root pairs <= -2 with L.
inline QuasiNefReport is_quasi_nef(const SurfaceContext& ctx, const LineBundleClass& l, const SearchOptions& opts = {}) {
  QuasiNefReport r;
  r.classification = classify_h1(ctx, l, opts);
  r.quasi_nef = r.classification.kind != H1Case::CaseIII;
  r.witness = r.classification.witness;
  if (r.classification.reduction.steps.empty() && ctx.norm(l.cls) == 0) r.isotropic = isotropic_type(ctx, l);
  return r;
}

struct PositivePairing {
  Integer value;
};

struct CommonIsotropic {
  DivisorClass f;
  Integer a;
  Integer b;
};

using LemmaAlignment = std::variant<PositivePairing, CommonIsotropic>;

/// Two effective classes of nonnegative square pair nonnegatively, with
/// equality only for multiples a*F, b*F of one primitive isotropic F.
inline LemmaAlignment check_lemma_alignment(const SurfaceContext& ctx, const DivisorClass& a, const DivisorClass& b) {
  for (const auto* v : {&a, &b}) {
    ctx.lattice().check(*v);
    if (v->is_zero() || ctx.norm(*v) < 0 || is_effective(ctx, {*v, 0}) != Effectivity::Effective)
      throw PreconditionError("lemma alignment needs nonzero effective classes of nonnegative square");
  }
  const Integer p = ctx.pair(a, b);
  KVANISH_ASSERT(p >= 0, "effective classes " + a.str() + ", " + b.str() + " pair negatively");
  if (p > 0) return PositivePairing{p};
  DivisorClass f = primitive_part(a);
  KVANISH_ASSERT(primitive_part(b) == f, "zero pairing between non-proportional classes");
  KVANISH_ASSERT(ctx.norm(f) == 0, "zero pairing between classes of positive square");
  return CommonIsotropic{std::move(f), divisibility(a), divisibility(b)};
}

/// Cohomology of any class that is zero or has nonnegative square.
struct Cohomology {
  enum class Route { Trivial, Direct, SerreDual };
  Route route = Route::Direct;
  Integer h0, h1, h2, chi;
  std::optional<H1Classification> classification;  // of the class itself, or of K_X - L
};

inline Cohomology cohomology(const SurfaceContext& ctx, const LineBundleClass& l, const SearchOptions& opts = {}) {
  ctx.check(l);
  Cohomology c;
  c.chi = euler_char(ctx, l);
  if (l.cls.is_zero()) {
    c.route = Cohomology::Route::Trivial;
    c.h0 = l.torsion == 0 ? 1 : 0;
    c.h1 = 0;
    c.h2 = h2(ctx, l);
    return c;
  }
  if (ctx.norm(l.cls) < 0) throw PreconditionError("h^1 of a class with negative square is not computed");
  const Integer deg = ctx.degree(l.cls);
  KVANISH_ASSERT(deg != 0, "nonzero class of nonnegative square orthogonal to the ample class");
  if (deg > 0) {
    c.classification = classify_h1(ctx, l, opts);
    c.h0 = c.classification->h0;
    c.h1 = c.classification->h1;
    c.h2 = c.classification->h2;
    return c;
  }
  c.route = Cohomology::Route::SerreDual;
  c.classification = classify_h1(ctx, serre_dual(ctx, l), opts);
  c.h0 = 0;
  c.h1 = c.classification->h1;
  c.h2 = c.classification->h0;
  return c;
}

inline Integer h0(const SurfaceContext& ctx, const LineBundleClass& l, const SearchOptions& opts = {}) {
  return cohomology(ctx, l, opts).h0;
}

inline Integer h1(const SurfaceContext& ctx, const LineBundleClass& l, const SearchOptions& opts = {}) {
  return cohomology(ctx, l, opts).h1;
}

/// Structural checks on a reduction chain. Returns a description of every
/// violated invariant; empty when the chain is sound.
inline std::vector<std::string> verify_chain(const SurfaceContext& ctx, const ReductionChain& chain) {
  std::vector<std::string> bad;
  const LineBundleClass* prev = &chain.initial;
  for (std::size_t k = 0; k < chain.steps.size(); ++k) {
    const auto& s = chain.steps[k];
    const std::string at = "step " + std::to_string(k) + ": ";
    if (!(s.before == *prev)) bad.push_back(at + "chain is not linked");
    if (ctx.norm(s.gamma) != -2) bad.push_back(at + "subtracted class is not a root");
    if (ctx.degree(s.gamma) != s.degree || s.degree <= 0) bad.push_back(at + "bad root degree");
    if (ctx.pair(s.gamma, s.before.cls) != s.pairing || s.pairing >= 0) bad.push_back(at + "bad pairing");
    if (!(s.after.cls == s.before.cls - s.gamma) || s.after.torsion != s.before.torsion)
      bad.push_back(at + "after != before - gamma");
    if (ctx.degree(s.after.cls) >= ctx.degree(s.before.cls)) bad.push_back(at + "degree did not decrease");
    const Integer nb = ctx.norm(s.before.cls), na = ctx.norm(s.after.cls);
    if (na != nb - 2 * s.pairing - 2 || na < nb) bad.push_back(at + "norm bookkeeping violated");
    if (s.pairing == -1 && euler_char(ctx, s.after) != euler_char(ctx, s.before))
      bad.push_back(at + "chi changed across a -1 step");
    prev = &s.after;
  }
  if (!(chain.final == *prev)) bad.push_back("final class does not match last step");
  return bad;
}

}  // namespace kvanish
