#pragma once

// Surface semantics on top of a hyperbolic lattice: K3 vs Enriques
// constants, canonical torsion, Riemann-Roch, effectivity and nefness.

#include "kvanish/integer.hpp"
#include "kvanish/lattice.hpp"
#include "kvanish/roots.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kvanish {

enum class SurfaceKind { K3, Enriques };

inline const char* to_string(SurfaceKind k) { return k == SurfaceKind::K3 ? "K3" : "Enriques"; }

/// Holomorphic Euler characteristic of the structure sheaf.
constexpr int chi_O(SurfaceKind k) { return k == SurfaceKind::K3 ? 2 : 1; }

/// Whether the (-2)-curves of an Enriques surface are known.
///   Unnodal: the surface carries no (-2)-curves at all.
///   DeclaredNodal: the supplied classes are all irreducible (-2)-curves up
///   to the degrees searched. Answers are conditional on that claim.
enum class NodalMode { Unnodal, DeclaredNodal };

/// A numerical class plus the canonical torsion bit. On an Enriques surface
/// torsion == 1 means the bundle L + K_X; on a K3 surface it must be 0.
struct LineBundleClass {
  DivisorClass cls;
  int torsion = 0;

  friend bool operator==(const LineBundleClass&, const LineBundleClass&) = default;
};

struct AmpleRejection {
  enum class Reason { NotHyperbolic, NotPositiveSquare, RootOnWall, NegativeOnNodal };
  Reason reason;
  std::optional<DivisorClass> witness;

  std::string message() const {
    switch (reason) {
      case Reason::NotHyperbolic: return "lattice signature is not (1, rank-1, 0)";
      case Reason::NotPositiveSquare: return "ample class must have positive square";
      case Reason::RootOnWall: return "root " + witness->str() + " is orthogonal to the ample class (RootOnWall)";
      case Reason::NegativeOnNodal:
        return "declared nodal class " + witness->str() + " pairs non-positively with the ample class (NegativeOnNodal)";
    }
    return "invalid ample class";
  }
  const char* tag() const {
    switch (reason) {
      case Reason::NotHyperbolic: return "NotHyperbolic";
      case Reason::NotPositiveSquare: return "NotPositiveSquare";
      case Reason::RootOnWall: return "RootOnWall";
      case Reason::NegativeOnNodal: return "NegativeOnNodal";
    }
    return "";
  }
};

/// Chamber test for an ample candidate. Returns nullopt when h is accepted.
inline std::optional<AmpleRejection> validate_ample(const Lattice& lat, const DivisorClass& h,
                                                    std::span<const DivisorClass> declared_nodal = {}) {
  lat.check(h);
  if (!is_hyperbolic(lat)) return AmpleRejection{AmpleRejection::Reason::NotHyperbolic, std::nullopt};
  if (norm(lat, h) <= 0) return AmpleRejection{AmpleRejection::Reason::NotPositiveSquare, std::nullopt};
  const auto perp = orthogonal_complement_basis(lat, h);
  if (!perp.basis.empty()) {
    const auto wall = enum_fixed_norm_negdef(perp.gram, -2);
    if (!wall.empty()) {
      // Report the first wall root in the ambient basis.
      DivisorClass r = DivisorClass::zero(lat.rank());
      for (std::size_t i = 0; i < perp.basis.size(); ++i) r += wall.front()[i] * perp.basis[i];
      return AmpleRejection{AmpleRejection::Reason::RootOnWall, r};
    }
  }
  for (const auto& c : declared_nodal)
    if (pair(lat, h, c) <= 0) return AmpleRejection{AmpleRejection::Reason::NegativeOnNodal, c};
  return std::nullopt;
}

/// Input that cannot form a valid surface context.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what, std::optional<AmpleRejection> rejection = {})
      : Error(field + ": " + what), field_(std::move(field)), rejection_(std::move(rejection)) {}

  const std::string& field() const noexcept { return field_; }
  const std::optional<AmpleRejection>& rejection() const noexcept { return rejection_; }

 private:
  std::string field_;
  std::optional<AmpleRejection> rejection_;
};

/// Optional override of the default degree bound pair(L, H) used by every
/// nefness and obstruction search.
struct SearchOptions {
  std::optional<Integer> max_degree;

  bool bounded() const noexcept { return max_degree.has_value(); }
};

enum class Effectivity { Effective, NotEffective, Undecidable };

inline const char* to_string(Effectivity e) {
  switch (e) {
    case Effectivity::Effective: return "Effective";
    case Effectivity::NotEffective: return "NotEffective";
    case Effectivity::Undecidable: return "Undecidable";
  }
  return "";
}

struct SurfaceOptions {
  NodalMode mode = NodalMode::Unnodal;
  std::vector<DivisorClass> nodal;
  // Primitive isotropic classes whose half-fiber torsion labels are swapped.
  std::vector<DivisorClass> torsion_flips;
};

/// Validated, immutable surface data.
class SurfaceContext {
 public:
  using Options = SurfaceOptions;

  SurfaceContext(SurfaceKind kind, Lattice lattice, DivisorClass ample, SurfaceOptions opts = SurfaceOptions())
      : kind_(kind), lattice_(std::move(lattice)), ample_(std::move(ample)), opts_(std::move(opts)) {
    if (ample_.size() != lattice_.rank()) throw ValidationError("ample", "wrong number of coordinates");
    if (kind_ == SurfaceKind::K3 && (opts_.mode != NodalMode::Unnodal || !opts_.nodal.empty()))
      throw ValidationError("enriques_mode", "nodal declarations are only meaningful on Enriques surfaces");
    if (opts_.mode == NodalMode::Unnodal && !opts_.nodal.empty())
      throw ValidationError("nodal_classes", "nodal classes given but enriques_mode is unnodal");
    for (std::size_t i = 0; i < opts_.nodal.size(); ++i) {
      const auto& c = opts_.nodal[i];
      if (c.size() != lattice_.rank())
        throw ValidationError("nodal_classes/" + std::to_string(i), "wrong number of coordinates");
      if (kvanish::norm(lattice_, c) != -2)
        throw ValidationError("nodal_classes/" + std::to_string(i), "nodal class " + c.str() + " does not have norm -2");
    }
    for (std::size_t i = 0; i < opts_.torsion_flips.size(); ++i) {
      const auto& e = opts_.torsion_flips[i];
      if (e.size() != lattice_.rank() || e.is_zero() || kvanish::norm(lattice_, e) != 0 || divisibility(e) != 1)
        throw ValidationError("torsion_flips/" + std::to_string(i), "must be a primitive isotropic class");
    }
    if (auto rej = validate_ample(lattice_, ample_, opts_.nodal)) {
      const std::string field = rej->reason == AmpleRejection::Reason::NotHyperbolic ? "gram" : "ample";
      throw ValidationError(field, rej->message(), rej);
    }
    canonical_sort(opts_.nodal);
    slicer_ = std::make_shared<const RootSlicer>(lattice_, ample_);
  }

  SurfaceKind kind() const noexcept { return kind_; }
  int chi_O() const noexcept { return kvanish::chi_O(kind_); }
  const Lattice& lattice() const noexcept { return lattice_; }
  const DivisorClass& ample() const noexcept { return ample_; }
  NodalMode mode() const noexcept { return opts_.mode; }
  const std::vector<DivisorClass>& nodal_classes() const noexcept { return opts_.nodal; }
  const RootSlicer& slicer() const noexcept { return *slicer_; }

  /// Answers depend on the declared nodal list being complete.
  bool conditional() const noexcept { return opts_.mode == NodalMode::DeclaredNodal; }

  /// Enriques data on a lattice other than an even unimodular one of rank 10.
  bool nonstandard_enriques_lattice() const {
    if (kind_ != SurfaceKind::Enriques) return false;
    return !(lattice_.rank() == 10 && num::abs(determinant(lattice_)) == 1);
  }

  bool torsion_flipped(const DivisorClass& primitive_isotropic) const {
    for (const auto& e : opts_.torsion_flips)
      if (e == primitive_isotropic || e == -primitive_isotropic) return true;
    return false;
  }

  Integer degree(const DivisorClass& v) const { return kvanish::pair(lattice_, v, ample_); }
  Integer pair(const DivisorClass& v, const DivisorClass& w) const { return kvanish::pair(lattice_, v, w); }
  Integer norm(const DivisorClass& v) const { return kvanish::norm(lattice_, v); }

  /// FNV-1a digest of the sorted nodal list, as 16 hex digits.
  std::string nodal_hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](const std::string& s) {
      for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
      }
    };
    for (const auto& c : opts_.nodal) mix(c.str() + ";");
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

  void check(const LineBundleClass& l) const {
    lattice_.check(l.cls);
    if (l.torsion != 0 && l.torsion != 1) throw PreconditionError("torsion bit must be 0 or 1");
    if (kind_ == SurfaceKind::K3 && l.torsion != 0) throw PreconditionError("K3 bundles carry no torsion bit");
  }

 private:
  SurfaceKind kind_;
  Lattice lattice_;
  DivisorClass ample_;
  Options opts_;
  std::shared_ptr<const RootSlicer> slicer_;
};

/// Riemann-Roch: chi(L) = L^2/2 + chi(O_X).
inline Integer euler_char(const SurfaceContext& ctx, const LineBundleClass& l) {
  ctx.check(l);
  return ctx.norm(l.cls) / 2 + ctx.chi_O();
}

/// K_X - L.
inline LineBundleClass serre_dual(const SurfaceContext& ctx, const LineBundleClass& l) {
  ctx.check(l);
  return {-l.cls, ctx.kind() == SurfaceKind::Enriques ? 1 - l.torsion : 0};
}

namespace detail {

/// Nonnegative integer combination of the declared nodal classes equal to
/// target, if one exists.
inline bool nodal_combination(const SurfaceContext& ctx, std::size_t from, const DivisorClass& target) {
  if (target.is_zero()) return true;
  const Integer deg = ctx.degree(target);
  if (deg <= 0) return false;
  const auto& nodal = ctx.nodal_classes();
  for (std::size_t i = from; i < nodal.size(); ++i) {
    const Integer di = ctx.degree(nodal[i]);
    DivisorClass rest = target;
    for (Integer a = 1; a * di <= deg; ++a) {
      rest -= nodal[i];
      if (nodal_combination(ctx, i + 1, rest)) return true;
    }
  }
  return false;
}

}  // namespace detail

inline Effectivity is_effective(const SurfaceContext& ctx, const LineBundleClass& l) {
  ctx.check(l);
  if (l.cls.is_zero()) return l.torsion == 0 ? Effectivity::Effective : Effectivity::NotEffective;
  const Integer deg = ctx.degree(l.cls);
  // A nonzero effective class has positive degree against an ample class.
  if (deg <= 0) return Effectivity::NotEffective;
  const Integer n = ctx.norm(l.cls);
  if (n >= 0) return Effectivity::Effective;
  if (n != -2) return Effectivity::Undecidable;
  if (ctx.kind() == SurfaceKind::K3) return Effectivity::Effective;
  if (ctx.mode() == NodalMode::Unnodal) return Effectivity::NotEffective;
  // Declared nodal curves are taken with torsion bit 0.
  if (l.torsion == 0 && detail::nodal_combination(ctx, 0, l.cls)) return Effectivity::Effective;
  return Effectivity::Undecidable;
}

/// Effective roots of ample degree d.
inline std::vector<DivisorClass> effective_roots_of_degree(const SurfaceContext& ctx, const Integer& d) {
  if (ctx.kind() == SurfaceKind::Enriques && ctx.mode() == NodalMode::Unnodal) return {};
  auto roots = ctx.slicer().roots(d);
  if (ctx.kind() == SurfaceKind::K3) return roots;
  std::vector<DivisorClass> out;
  for (auto& r : roots)
    if (is_effective(ctx, {r, 0}) == Effectivity::Effective) out.push_back(std::move(r));
  return out;
}

struct NefResult {
  bool nef = true;
  std::optional<RootPairing> violator;  // minimal degree, then canonical order
  Integer degree_bound;
};

/// Minimal-degree effective root pairing negatively with cls, searched up to
/// the given degree bound.
inline std::optional<RootPairing> first_negative_effective_root(const SurfaceContext& ctx, const DivisorClass& cls,
                                                                const Integer& bound) {
  for (Integer d = 1; d <= bound; ++d)
    for (auto& r : effective_roots_of_degree(ctx, d)) {
      Integer p = ctx.pair(r, cls);
      if (p < 0) return RootPairing{std::move(r), d, std::move(p)};
    }
  return std::nullopt;
}

/// Largest H-degree a root pairing negatively with cls can have, for cls of
/// nonnegative square and positive degree.
///
/// With a = H^2, b = cls.H, c = cls^2, a root D with D.H = d > 0 and
/// D.cls = -p < 0 projects onto <H, cls> with square >= -2 (the complement is
/// negative definite), i.e. c d^2 + 2 b d p + a p^2 <= 2 (b^2 - a c). Since
/// p >= 1 this gives d <= (b^2 - a c) / b, which never exceeds b.
inline Integer negative_root_degree_bound(const SurfaceContext& ctx, const DivisorClass& cls) {
  if (cls.is_zero()) return 0;
  const Integer a = ctx.norm(ctx.ample()), b = ctx.degree(cls), c = ctx.norm(cls);
  if (c < 0 || b <= 0) throw PreconditionError("degree bound needs nonnegative square and positive degree");
  const Integer disc = b * b - a * c;
  if (disc <= 0) return 0;
  return num::floor_div(disc, b);
}

inline NefResult is_nef(const SurfaceContext& ctx, const LineBundleClass& l, const SearchOptions& opts = {}) {
  ctx.check(l);
  if (ctx.norm(l.cls) < 0) throw PreconditionError("nef test requires nonnegative square");
  if (is_effective(ctx, l) != Effectivity::Effective) throw PreconditionError("nef test requires an effective class");
  NefResult res;
  res.degree_bound = std::min(opts.max_degree.value_or(ctx.degree(l.cls)), negative_root_degree_bound(ctx, l.cls));
  res.violator = first_negative_effective_root(ctx, l.cls, res.degree_bound);
  res.nef = !res.violator.has_value();
  return res;
}

/// h^2(L) = h^0(K_X - L), for L effective or numerically trivial.
inline Integer h2(const SurfaceContext& ctx, const LineBundleClass& l) {
  ctx.check(l);
  if (l.cls.is_zero()) {
    // h^0(K_X - L): O_X when L == K_X (K3, or Enriques with bit 1), else K_X.
    const LineBundleClass dual = serre_dual(ctx, l);
    return dual.torsion == 0 ? 1 : 0;
  }
  if (is_effective(ctx, l) != Effectivity::Effective) throw PreconditionError("h2 requires an effective class");
  return 0;
}

}  // namespace kvanish
