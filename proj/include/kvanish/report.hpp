#pragma once

// Per-bundle analysis and its machine (JSON) and text renderings.

#include "kvanish/instance.hpp"
#include "kvanish/surface.hpp"
#include "kvanish/vanishing.hpp"

#include "json.hpp"

#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace kvanish {

inline constexpr const char* kReportSchema = "kvanish-report/1";

struct BundleAnalysis {
  std::string label;
  LineBundleClass bundle;
  Integer norm, degree, chi;
  Effectivity effectivity = Effectivity::Undecidable;
  std::optional<Cohomology> cohomology;
  std::optional<std::string> unsupported;  // why no cohomology was computed
};

inline BundleAnalysis analyze_bundle(const SurfaceContext& ctx, const LabeledBundle& lb, const SearchOptions& opts = {}) {
  BundleAnalysis a;
  a.label = lb.label;
  a.bundle = lb.bundle;
  a.norm = ctx.norm(lb.bundle.cls);
  a.degree = ctx.degree(lb.bundle.cls);
  a.chi = euler_char(ctx, lb.bundle);
  a.effectivity = is_effective(ctx, lb.bundle);
  if (a.norm < 0) {
    a.unsupported = "class has negative square; h^1 is only determined for squares >= 0";
    return a;
  }
  try {
    a.cohomology = cohomology(ctx, lb.bundle, opts);
  } catch (const PreconditionError& e) {
    a.unsupported = e.what();
  }
  return a;
}

/// Analyzes every bundle; results follow document order for any thread count.
inline std::vector<BundleAnalysis> analyze_all(const SurfaceContext& ctx, const std::vector<LabeledBundle>& bundles,
                                               const SearchOptions& opts = {}, unsigned threads = 1) {
  std::vector<BundleAnalysis> out(bundles.size());
  if (threads <= 1 || bundles.size() <= 1) {
    for (std::size_t i = 0; i < bundles.size(); ++i) out[i] = analyze_bundle(ctx, bundles[i], opts);
    return out;
  }
  std::vector<std::future<void>> workers;
  for (unsigned t = 0; t < threads; ++t)
    workers.push_back(std::async(std::launch::async, [&, t] {
      for (std::size_t i = t; i < bundles.size(); i += threads) out[i] = analyze_bundle(ctx, bundles[i], opts);
    }));
  for (auto& w : workers) w.get();
  return out;
}

namespace json_out {

using ojson = nlohmann::ordered_json;

inline ojson integer(const Integer& v) {
  if (num::fits_int64(v)) return static_cast<std::int64_t>(v);
  return v.str();
}

inline ojson vec(const DivisorClass& v) {
  ojson a = ojson::array();
  for (const auto& c : v.coords()) a.push_back(integer(c));
  return a;
}

inline ojson bundle(const LineBundleClass& l) { return {{"coords", vec(l.cls)}, {"torsion", l.torsion}}; }

inline ojson root_pairing(const RootPairing& r) {
  return {{"root", vec(r.root)}, {"degree", integer(r.degree)}, {"pairing", integer(r.pairing)}};
}

inline ojson chain(const ReductionChain& c) {
  ojson steps = ojson::array();
  for (const auto& s : c.steps)
    steps.push_back({{"gamma", vec(s.gamma)},
                     {"degree", integer(s.degree)},
                     {"pairing", integer(s.pairing)},
                     {"before", bundle(s.before)},
                     {"after", bundle(s.after)}});
  return {{"initial", bundle(c.initial)}, {"steps", steps}, {"final", bundle(c.final)}, {"bounded_search", c.bounded}};
}

inline ojson isotropic(const std::optional<IsotropicType>& t) {
  if (!t) return nullptr;
  return {{"n", integer(t->n)}, {"E", vec(t->e)}};
}

inline ojson surface(const SurfaceContext& ctx) {
  const Signature sig = signature(ctx.lattice());
  ojson s = {{"kind", to_string(ctx.kind())},
             {"rank", ctx.lattice().rank()},
             {"signature", {sig.positive, sig.negative, sig.zero}},
             {"ample", vec(ctx.ample())},
             {"chi_O", ctx.chi_O()}};
  if (ctx.kind() == SurfaceKind::Enriques) {
    s["enriques_mode"] = ctx.mode() == NodalMode::Unnodal ? "unnodal" : "declared_nodal";
    s["nonstandard_enriques_lattice"] = ctx.nonstandard_enriques_lattice();
  }
  s["conditional"] = ctx.conditional();
  if (ctx.conditional()) s["nodal_hash"] = ctx.nodal_hash();
  return s;
}

inline ojson analysis(const SurfaceContext& ctx, const BundleAnalysis& a) {
  ojson j = {{"label", a.label},
             {"coords", vec(a.bundle.cls)},
             {"torsion", a.bundle.torsion},
             {"norm", integer(a.norm)},
             {"degree", integer(a.degree)},
             {"chi", integer(a.chi)},
             {"effectivity", to_string(a.effectivity)}};
  ojson notes = ojson::array();
  if (!a.cohomology) {
    j["status"] = "unsupported";
    j["reason"] = *a.unsupported;
    return j;
  }
  const Cohomology& c = *a.cohomology;
  j["status"] = "ok";
  switch (c.route) {
    case Cohomology::Route::Trivial: j["route"] = "trivial"; break;
    case Cohomology::Route::Direct: j["route"] = "direct"; break;
    case Cohomology::Route::SerreDual:
      j["route"] = "serre_dual";
      notes.push_back("not effective; classified K_X - L and applied Serre duality");
      break;
  }
  if (c.classification) {
    const H1Classification& k = *c.classification;
    const auto& steps = k.reduction.steps;
    j["classified"] = bundle(k.reduction.initial);
    j["nef"] = steps.empty();
    j["nef_violator"] = steps.empty() ? ojson(nullptr)
                                      : root_pairing({steps.front().gamma, steps.front().degree, steps.front().pairing});
    j["quasi_nef"] = k.kind != H1Case::CaseIII;
    j["case"] = to_string(k.kind);
    j["isotropic"] = isotropic(k.isotropic);
    j["witness"] = k.witness ? vec(*k.witness) : ojson(nullptr);
    j["witness_pairing"] = k.witness ? integer(k.witness_pairing) : ojson(nullptr);
    j["reduction"] = chain(k.reduction);
    if (k.exact_h1_via_reduction) notes.push_back("exact h1 via fixed-component reduction");
    if (k.bounded) notes.push_back("bounded search");
  } else {
    j["case"] = "Vanishes";
  }
  j["h0"] = integer(c.h0);
  j["h1"] = integer(c.h1);
  j["h2"] = integer(c.h2);
  j["conditional"] = ctx.conditional();
  if (ctx.conditional()) notes.push_back("conditional on nodal completeness");
  j["notes"] = notes;
  return j;
}

inline ojson envelope(const SurfaceContext& ctx, const std::string& command, const SearchOptions& opts) {
  ojson j = {{"schema", kReportSchema}, {"command", command}, {"surface", surface(ctx)}};
  j["bounded_search"] = opts.bounded();
  j["max_degree"] = opts.max_degree ? integer(*opts.max_degree) : ojson(nullptr);
  return j;
}

}  // namespace json_out

namespace text_out {

inline std::string header(const SurfaceContext& ctx, const SearchOptions& opts) {
  std::ostringstream os;
  const Signature sig = signature(ctx.lattice());
  os << to_string(ctx.kind()) << " surface, rank " << ctx.lattice().rank() << ", signature (" << sig.positive << ","
     << sig.negative << "," << sig.zero << "), ample " << ctx.ample() << "\n";
  if (ctx.kind() == SurfaceKind::Enriques) {
    os << "  mode: " << (ctx.mode() == NodalMode::Unnodal ? "unnodal" : "declared nodal");
    if (ctx.conditional()) os << " (conditional on nodal completeness, nodal hash " << ctx.nodal_hash() << ")";
    os << "\n";
    if (ctx.nonstandard_enriques_lattice()) os << "  warning: lattice is not even unimodular of rank 10\n";
  }
  if (opts.bounded()) os << "  bounded search: max degree " << *opts.max_degree << "\n";
  return os.str();
}

inline std::string torsion_suffix(const LineBundleClass& l) { return l.torsion ? " + K_X" : ""; }

inline std::string chain(const ReductionChain& c) {
  std::ostringstream os;
  if (c.steps.empty()) os << "    reduction: already nef\n";
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    const auto& s = c.steps[i];
    os << "    step " << i + 1 << ": subtract " << s.gamma << " (degree " << s.degree << ", pairing " << s.pairing
       << ") -> " << s.after.cls << torsion_suffix(s.after) << "\n";
  }
  os << "    final: " << c.final.cls << torsion_suffix(c.final) << "\n";
  return os.str();
}

inline std::string analysis(const BundleAnalysis& a) {
  std::ostringstream os;
  os << a.label << ": " << a.bundle.cls << torsion_suffix(a.bundle) << "  norm " << a.norm << ", degree " << a.degree
     << ", chi " << a.chi << ", " << to_string(a.effectivity) << "\n";
  if (!a.cohomology) {
    os << "  unsupported: " << *a.unsupported << "\n";
    return os.str();
  }
  const Cohomology& c = *a.cohomology;
  if (c.route == Cohomology::Route::SerreDual) os << "  not effective; classifying K_X - L (Serre duality)\n";
  if (c.classification) {
    const auto& k = *c.classification;
    os << "  nef: " << (k.reduction.steps.empty() ? "yes" : "no")
       << ", quasi-nef: " << (k.kind != H1Case::CaseIII ? "yes" : "no") << "\n";
    os << "  case: " << to_string(k.kind);
    if (k.isotropic && k.kind != H1Case::Vanishes) os << " (n = " << k.isotropic->n << ", E = " << k.isotropic->e << ")";
    if (k.witness) os << " (witness " << *k.witness << ", pairing " << k.witness_pairing << ")";
    os << "\n";
    os << chain(k.reduction);
    if (k.exact_h1_via_reduction) os << "  note: exact h1 via fixed-component reduction\n";
  } else {
    os << "  case: Vanishes\n";
  }
  os << "  h0 = " << c.h0 << ", h1 = " << c.h1 << ", h2 = " << c.h2 << "\n";
  return os.str();
}

}  // namespace text_out
}  // namespace kvanish
