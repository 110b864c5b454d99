#pragma once

// Command-line front end. Kept in a header so tests can drive it in-process.
//
// Exit codes: 0 analysis completed, 1 internal assertion failure (including
// oracle disagreement), 2 usage or parse error, 3 validation error.

#include "kvanish/instance.hpp"
#include "kvanish/oracle.hpp"
#include "kvanish/report.hpp"
#include "kvanish/vanishing.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace kvanish::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kUsage = 2, kInvalid = 3 };

struct Invocation {
  std::string command;
  std::string input;
  std::string label;
  std::string format = "text";
  std::optional<long long> max_degree;
  long long cap = 6;
  unsigned threads = 1;
};

namespace detail {

inline std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream ss;
  if (path == "-") {
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("", "cannot open input file '" + path + "'");
  ss << f.rdbuf();
  return ss.str();
}

inline const LabeledBundle& lookup(const InstanceDocument& doc, const std::string& label) {
  if (const auto* b = doc.find(label)) return *b;
  throw ParseError("/bundles", "no bundle labelled \"" + label + "\"");
}

inline void emit(std::ostream& out, const nlohmann::ordered_json& j) { out << j.dump(2) << "\n"; }

inline int run_analyze(const Invocation& inv, const InstanceDocument& doc, const SurfaceContext& ctx,
                       const SearchOptions& opts, std::ostream& out) {
  const auto results = analyze_all(ctx, doc.bundles, opts, inv.threads);
  if (inv.format == "json") {
    auto j = json_out::envelope(ctx, "analyze", opts);
    auto arr = nlohmann::ordered_json::array();
    for (const auto& a : results) arr.push_back(json_out::analysis(ctx, a));
    j["bundles"] = arr;
    emit(out, j);
  } else {
    out << text_out::header(ctx, opts);
    for (const auto& a : results) out << text_out::analysis(a);
  }
  return kOk;
}

inline int run_roots(const Invocation& inv, const SurfaceContext& ctx, std::ostream& out) {
  const Integer max_degree = *inv.max_degree;
  if (max_degree < 1) throw ParseError("--max-degree", "must be at least 1");
  struct Row {
    DivisorClass root;
    Integer degree;
    Effectivity eff;
  };
  std::vector<Row> rows;
  for (Integer d = 1; d <= max_degree; ++d)
    for (auto& r : ctx.slicer().roots(d)) {
      const Effectivity e = is_effective(ctx, {r, 0});
      rows.push_back({std::move(r), d, e});
    }
  const SearchOptions opts{max_degree};
  if (inv.format == "json") {
    auto j = json_out::envelope(ctx, "roots", opts);
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rows)
      arr.push_back({{"root", json_out::vec(r.root)},
                     {"degree", json_out::integer(r.degree)},
                     {"effectivity", to_string(r.eff)}});
    j["roots"] = arr;
    emit(out, j);
  } else {
    out << text_out::header(ctx, {});
    out << rows.size() << " roots of degree 1.." << max_degree << "\n";
    for (const auto& r : rows) out << "  " << r.root << "  degree " << r.degree << "  " << to_string(r.eff) << "\n";
  }
  return kOk;
}

inline int run_reduce(const Invocation& inv, const InstanceDocument& doc, const SurfaceContext& ctx,
                      const SearchOptions& opts, std::ostream& out) {
  const auto& lb = lookup(doc, inv.label);
  const ReductionChain chain = nef_reduce(ctx, lb.bundle, opts);
  if (inv.format == "json") {
    auto j = json_out::envelope(ctx, "reduce", opts);
    j["label"] = lb.label;
    j["reduction"] = json_out::chain(chain);
    j["conditional"] = ctx.conditional();
    emit(out, j);
  } else {
    out << text_out::header(ctx, opts);
    out << lb.label << ": " << lb.bundle.cls << text_out::torsion_suffix(lb.bundle) << "\n" << text_out::chain(chain);
  }
  return kOk;
}

inline int run_quasinef(const Invocation& inv, const InstanceDocument& doc, const SurfaceContext& ctx,
                        const SearchOptions& opts, std::ostream& out) {
  const auto& lb = lookup(doc, inv.label);
  const QuasiNefReport r = is_quasi_nef(ctx, lb.bundle, opts);
  if (inv.format == "json") {
    auto j = json_out::envelope(ctx, "quasinef", opts);
    j["label"] = lb.label;
    j["quasi_nef"] = r.quasi_nef;
    j["case"] = to_string(r.classification.kind);
    j["witness"] = r.witness ? json_out::vec(*r.witness) : nlohmann::ordered_json(nullptr);
    j["witness_pairing"] =
        r.witness ? json_out::integer(r.classification.witness_pairing) : nlohmann::ordered_json(nullptr);
    j["isotropic"] = json_out::isotropic(r.isotropic);
    j["conditional"] = ctx.conditional();
    emit(out, j);
  } else {
    out << text_out::header(ctx, opts);
    out << lb.label << ": quasi-nef " << (r.quasi_nef ? "yes" : "no");
    if (r.witness) out << ", witness " << *r.witness << " pairing " << r.classification.witness_pairing;
    if (r.isotropic) out << ", isotropic n = " << r.isotropic->n << ", E = " << r.isotropic->e;
    out << "\n";
  }
  return kOk;
}

inline int run_oracle(const Invocation& inv, const SurfaceContext& ctx, std::ostream& out) {
  if (inv.cap < 1) throw ParseError("--cap", "must be at least 1");
  const auto rep = oracle::cross_validate(ctx, inv.cap);
  if (inv.format == "json") {
    auto j = json_out::envelope(ctx, "oracle-check", {});
    j["cap"] = inv.cap;
    j["bundles"] = rep.bundles;
    auto counts = nlohmann::ordered_json::object();
    for (H1Case c : {H1Case::Vanishes, H1Case::CaseI, H1Case::CaseII, H1Case::CaseIII}) {
      auto it = rep.counts.find(c);
      counts[to_string(c)] = it == rep.counts.end() ? 0 : it->second;
    }
    j["counts"] = counts;
    j["chain_steps"] = rep.chain_steps;
    j["mismatches"] = rep.mismatches;
    j["quasi_nef_mismatches"] = rep.quasi_nef_mismatches;
    j["invariant_failures"] = rep.invariant_failures;
    j["ok"] = rep.ok();
    emit(out, j);
  } else {
    out << text_out::header(ctx, {});
    out << "checked " << rep.bundles << " bundles of degree 1.." << inv.cap << " (" << rep.chain_steps
        << " reduction steps)\n";
    for (const auto& [c, n] : rep.counts) out << "  " << to_string(c) << ": " << n << "\n";
    out << "mismatches: " << rep.mismatches.size() << ", quasi-nef mismatches: " << rep.quasi_nef_mismatches.size()
        << ", invariant failures: " << rep.invariant_failures.size() << "\n";
    for (const auto& m : rep.mismatches) out << "  MISMATCH " << m << "\n";
    for (const auto& m : rep.quasi_nef_mismatches) out << "  QUASI-NEF MISMATCH " << m << "\n";
    for (const auto& m : rep.invariant_failures) out << "  INVARIANT " << m << "\n";
  }
  return rep.ok() ? kOk : kInternal;
}

}  // namespace detail

inline int execute(const Invocation& inv, std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    const InstanceDocument doc = parse_instance(detail::read_input(inv.input, in));
    const SurfaceContext ctx = make_context(doc);
    SearchOptions opts;
    if (inv.max_degree && inv.command != "roots") {
      if (*inv.max_degree < 1) throw ParseError("--max-degree", "must be at least 1");
      opts.max_degree = Integer(*inv.max_degree);
    }
    if (inv.command == "analyze") return detail::run_analyze(inv, doc, ctx, opts, out);
    if (inv.command == "roots") return detail::run_roots(inv, ctx, out);
    if (inv.command == "reduce") return detail::run_reduce(inv, doc, ctx, opts, out);
    if (inv.command == "quasinef") return detail::run_quasinef(inv, doc, ctx, opts, out);
    if (inv.command == "oracle-check") return detail::run_oracle(inv, ctx, out);
    err << "error: unknown command '" << inv.command << "'\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kInvalid;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
}

/// Parses arguments (without the program name) and runs the command.
inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decide H^1 vanishing for line bundles on K3 and Enriques surfaces from lattice data.", "kvanish"};
  app.require_subcommand(1);
  Invocation inv;

  auto common = [&inv](CLI::App* sub) {
    sub->add_option("input", inv.input, "Instance document (JSON), or - for standard input")->required();
    sub->add_option("--format", inv.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--threads", inv.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  };

  auto* analyze = app.add_subcommand("analyze", "Classify every bundle in the document");
  analyze->add_option("--max-degree", inv.max_degree, "Override the degree bound of root searches");
  common(analyze);

  auto* roots = app.add_subcommand("roots", "List roots of ample degree 1..D");
  roots->add_option("--max-degree", inv.max_degree, "Largest degree D")->required();
  common(roots);

  auto* reduce = app.add_subcommand("reduce", "Show the nef-reduction chain of one bundle");
  common(reduce);
  reduce->add_option("label", inv.label, "Bundle label")->required();
  reduce->add_option("--max-degree", inv.max_degree, "Override the degree bound of root searches");

  auto* quasinef = app.add_subcommand("quasinef", "Quasi-nefness of one bundle");
  common(quasinef);
  quasinef->add_option("label", inv.label, "Bundle label")->required();
  quasinef->add_option("--max-degree", inv.max_degree, "Override the degree bound of root searches");

  auto* oracle = app.add_subcommand("oracle-check", "Cross-check the classifier against brute force");
  oracle->add_option("--cap", inv.cap, "Largest bundle degree to check");
  common(oracle);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }
  inv.command = app.get_subcommands().front()->get_name();
  return execute(inv, in, out, err);
}

}  // namespace kvanish::cli
