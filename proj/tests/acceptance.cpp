// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include "fixtures.hpp"
#include "kvanish/oracle.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace kvanish;
using namespace kvanish::testing;

namespace {

struct Check {
  std::ostringstream log;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    if (ok || log.tellp() < 2000) log << "    " << what << "\n";
    ok = false;
  }
};

// Chains and analyzed bundles collected across criteria for 8 and 9.
struct Collected {
  struct Entry {
    const SurfaceContext* ctx;
    H1Classification c;
  };
  std::vector<Entry> classifications;
};

Collected collected;

const SurfaceContext& plane() {
  static const SurfaceContext c = k3_plane();
  return c;
}
const SurfaceContext& a2() {
  static const SurfaceContext c = k3_a2();
  return c;
}
const SurfaceContext& en_plane() {
  static const SurfaceContext c = enriques_plane();
  return c;
}

H1Classification keep(const SurfaceContext& ctx, const LineBundleClass& l) {
  H1Classification c = classify_h1(ctx, l);
  collected.classifications.push_back({&ctx, c});
  return c;
}

void criterion1(Check& ck) {
  const auto c = keep(a2(), {{1, 1, 1}, 0});
  ck.expect(c.kind == H1Case::CaseIII, "case is " + std::string(to_string(c.kind)));
  ck.expect(c.witness && *c.witness == DivisorClass{0, 1, 1}, "witness");
  ck.expect(c.witness_pairing == -2, "witness pairing " + c.witness_pairing.str());
  ck.expect(c.h1 == 1, "h1 = " + c.h1.str());
  ck.expect(c.h0 == 4, "h0 = " + c.h0.str());
  ck.expect(c.h0 - c.h1 == 3 && c.chi == 3, "h0 - h1 != chi = 3");
}

void criterion2(Check& ck) {
  const auto e = keep(plane(), {{0, 1}, 0});
  ck.expect(e.h1 == 0, "h1((0,1)) = " + e.h1.str());
  for (long long n = 2; n <= 10; ++n) {
    const auto c = keep(plane(), {{0, n}, 0});
    ck.expect(c.kind == H1Case::CaseI && c.h1 == n - 1, "h1(" + std::to_string(n) + "E) = " + c.h1.str());
  }
}

void criterion3(Check& ck) {
  for (long long n = 2; n <= 10; ++n) {
    const auto c = keep(en_plane(), {{0, n}, 0});
    ck.expect(c.h1 == n / 2, "h1(" + std::to_string(n) + "E) = " + c.h1.str());
    const auto t = keep(en_plane(), {{0, n}, 1});
    const long long want = n == 2 ? 0 : (n - 1) / 2;
    ck.expect(t.h1 == want, "h1(" + std::to_string(n) + "E + K) = " + t.h1.str());
  }
}

void criterion4(Check& ck) {
  const std::pair<const SurfaceContext*, long long> runs[] = {{&plane(), 6}, {&a2(), 14}};
  for (auto [ctx, cap] : runs) {
    const auto rep = oracle::cross_validate(*ctx, cap);
    ck.expect(rep.mismatches.empty(), std::to_string(rep.mismatches.size()) + " mismatches at cap " +
                                          std::to_string(cap));
    for (const auto& m : rep.mismatches) ck.expect(false, m);
    ck.expect(rep.invariant_failures.empty(), "invariant failures at cap " + std::to_string(cap));
    ck.expect(rep.bundles > 0, "no bundles enumerated");
    for (const auto& l : oracle::effective_classes(*ctx, cap)) keep(*ctx, l);
  }
}

void criterion5(Check& ck) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto s = random_hyperbolic_with_ample(rng, 4, 6);
    const auto diff = oracle::root_slice_discrepancies(s.lattice, s.ample, 4);
    ck.expect(diff.empty(), "lattice " + std::to_string(t) + ": " + std::to_string(diff.size()) + " discrepancies");
  }
}

void criterion6(Check& ck) {
  const std::pair<const SurfaceContext*, long long> runs[] = {{&plane(), 6}, {&a2(), 14}};
  for (auto [ctx, cap] : runs)
    for (const auto& l : oracle::effective_classes(*ctx, cap)) {
      const auto r = is_quasi_nef(*ctx, l);
      ck.expect(r.quasi_nef == oracle::definition_quasi_nef(*ctx, l), "quasi-nef disagreement on " + l.cls.str());
    }
}

void criterion7(Check& ck) {
  const std::pair<const SurfaceContext*, long long> runs[] = {{&plane(), 12}, {&a2(), 20}};
  std::mt19937_64 rng(7);
  for (auto [ctx, cap] : runs) {
    const auto pool = oracle::effective_classes(*ctx, cap);
    ck.expect(pool.size() > 1, "pool too small");
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    int zero = 0;
    for (int t = 0; t < 1000; ++t) {
      const DivisorClass& a = pool[pick(rng)].cls;
      const DivisorClass& b = pool[pick(rng)].cls;
      try {
        const auto r = check_lemma_alignment(*ctx, a, b);
        if (const auto* ci = std::get_if<CommonIsotropic>(&r)) {
          ++zero;
          ck.expect(ctx->norm(ci->f) == 0 && divisibility(ci->f) == 1, "F not primitive isotropic");
          ck.expect(ci->a * ci->f == a && ci->b * ci->f == b, "A, B not multiples of F");
        } else {
          ck.expect(std::get<PositivePairing>(r).value > 0, "nonpositive pairing reported as positive");
        }
      } catch (const Error& e) {
        ck.expect(false, a.str() + ", " + b.str() + ": " + e.what());
      }
    }
    if (ctx == &plane()) ck.expect(zero > 0, "no zero-pairing case sampled");
  }
}

void criterion8(Check& ck) {
  std::size_t lifts = 0;
  for (const auto& [ctx, c] : collected.classifications) {
    const auto& chain = c.reduction;
    for (const auto& v : verify_chain(*ctx, chain)) ck.expect(false, chain.initial.cls.str() + ": " + v);
    for (std::size_t k = 0; k < chain.steps.size(); ++k) {
      const auto& s = chain.steps[k];
      ck.expect(ctx->norm(s.after.cls) >= ctx->norm(s.before.cls), "norm decreased");
      ck.expect(ctx->degree(s.after.cls) < ctx->degree(s.before.cls), "degree did not decrease");
      if (s.pairing == -1)
        ck.expect(euler_char(*ctx, s.after) == euler_char(*ctx, s.before), "chi changed across a -1 step");
      if (s.pairing > -2) continue;
      try {
        const DivisorClass w = lift_witness(*ctx, chain, s.gamma, k);
        ++lifts;
        ck.expect(ctx->norm(w) == -2 && ctx->pair(w, chain.initial.cls) <= -2 &&
                      is_effective(*ctx, {w, 0}) == Effectivity::Effective,
                  "lifted witness certificate fails");
      } catch (const Error& e) {
        ck.expect(false, std::string("lift failed: ") + e.what());
      }
    }
    if (c.kind == H1Case::CaseIII)
      ck.expect(c.witness && ctx->norm(*c.witness) == -2 && ctx->pair(*c.witness, chain.initial.cls) <= -2,
                "case (iii) witness certificate fails");
  }
  ck.expect(lifts > 0, "no witness was lifted");
}

void criterion9(Check& ck) {
  for (const auto& [ctx, c] : collected.classifications)
    ck.expect(c.h0 - c.h1 + c.h2 == ctx->norm(c.reduction.initial.cls) / 2 + ctx->chi_O(),
              "Riemann-Roch fails for " + c.reduction.initial.cls.str());
  const std::pair<const SurfaceContext*, LineBundleClass> trivial[] = {
      {&plane(), {{0, 0}, 0}}, {&en_plane(), {{0, 0}, 0}}, {&en_plane(), {{0, 0}, 1}}};
  for (const auto& [ctx, l] : trivial) {
    const auto co = cohomology(*ctx, l);
    ck.expect(co.h0 - co.h1 + co.h2 == ctx->chi_O(), "Riemann-Roch fails for trivial class");
  }
  // Duals of everything classified so far.
  for (const auto& [ctx, c] : collected.classifications) {
    const auto d = serre_dual(*ctx, c.reduction.initial);
    const auto co = cohomology(*ctx, d);
    ck.expect(co.h0 - co.h1 + co.h2 == ctx->norm(d.cls) / 2 + ctx->chi_O(), "Riemann-Roch fails for dual");
  }
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Check&)>> criteria[] = {
      {"rank-3 fixture: CaseIII, witness (0,1,1), h1 = 1, h0 = 4", criterion1},
      {"K3 isotropic multiples: h1(nE) = n - 1", criterion2},
      {"Enriques isotropic multiples and half-fiber convention", criterion3},
      {"oracle equivalence on U (cap 6) and <4> + A2(-1) (cap 14)", criterion4},
      {"root slices match box scan on 50 random lattices", criterion5},
      {"quasi-nef agrees with the definition search", criterion6},
      {"alignment of effective classes, 1000 pairs per fixture", criterion7},
      {"reduction chain invariants and witness lifting", criterion8},
      {"Riemann-Roch on every analyzed bundle", criterion9},
  };
  int failed = 0, index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Check ck;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(ck);
    } catch (const std::exception& e) {
      ck.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %d: %s (%.2fs)\n", ck.ok ? "PASS" : "FAIL", index, name, secs);
    if (!ck.ok) {
      std::cout << ck.log.str();
      ++failed;
    }
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
