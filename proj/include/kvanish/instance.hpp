#pragma once

// JSON instance documents: surface kind, Gram matrix, ample class, nodal
// data and a list of labelled bundles. Integers are exact: either JSON
// integer literals or decimal strings; floating point is rejected.

#include "kvanish/integer.hpp"
#include "kvanish/lattice.hpp"
#include "kvanish/surface.hpp"

#include "json.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace kvanish {

/// Malformed document. `field` is a JSON pointer to the offending value;
/// line/column are set for syntax errors.
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(format(field, what, line, column)), field_(std::move(field)), line_(line), column_(column) {}

  const std::string& field() const noexcept { return field_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& field, const std::string& what, std::size_t line, std::size_t col) {
    std::string s;
    if (line) s += "line " + std::to_string(line) + ", column " + std::to_string(col) + ": ";
    if (!field.empty()) s += field + ": ";
    return s + what;
  }

  std::string field_;
  std::size_t line_;
  std::size_t column_;
};

struct LabeledBundle {
  std::string label;
  LineBundleClass bundle;
};

struct InstanceDocument {
  SurfaceKind kind = SurfaceKind::K3;
  IntMatrix gram;
  DivisorClass ample;
  SurfaceOptions options;
  std::vector<LabeledBundle> bundles;

  const LabeledBundle* find(std::string_view label) const {
    for (const auto& b : bundles)
      if (b.label == label) return &b;
    return nullptr;
  }
};

namespace detail {

using nlohmann::json;

inline Integer parse_integer(const json& v, const std::string& where) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Integer(v.get<std::uint64_t>());
    return Integer(v.get<std::int64_t>());
  }
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) throw ParseError(where, "empty integer string");
    for (std::size_t k = i; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9') throw ParseError(where, "not a decimal integer: \"" + s + "\"");
    return Integer(s[0] == '+' ? s.substr(1) : s);
  }
  if (v.is_number_float())
    throw ParseError(where, "expected an exact integer, got a floating-point number (use a decimal string for large values)");
  throw ParseError(where, std::string("expected an integer, got ") + v.type_name());
}

inline DivisorClass parse_vector(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where, std::string("expected an array of integers, got ") + v.type_name());
  std::vector<Integer> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(parse_integer(v[i], where + "/" + std::to_string(i)));
  return DivisorClass(std::move(out));
}

inline std::vector<DivisorClass> parse_vector_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where, "expected an array of integer vectors");
  std::vector<DivisorClass> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(parse_vector(v[i], where + "/" + std::to_string(i)));
  return out;
}

inline void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) throw ParseError(where + "/" + key, "unknown field \"" + key + "\"");
}

inline const json& require(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + "/" + key, "missing required field \"" + key + "\"");
  return *it;
}

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace detail

/// Strict parse. Checks structure and integer exactness only; mathematical
/// validation happens in make_context.
inline InstanceDocument parse_instance(std::string_view text) {
  using detail::json;
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("", std::string("malformed JSON: ") + e.what(), line, col);
  }
  if (!root.is_object()) throw ParseError("/", "instance document must be a JSON object");
  detail::reject_unknown(
      root, {"schema", "surface", "gram", "ample", "enriques_mode", "nodal_classes", "torsion_flips", "bundles"}, "");

  InstanceDocument doc;
  if (auto it = root.find("schema"); it != root.end() && *it != "kvanish-instance/1")
    throw ParseError("/schema", "unsupported schema (expected \"kvanish-instance/1\")");

  const json& surface = detail::require(root, "surface", "");
  if (surface == "K3") {
    doc.kind = SurfaceKind::K3;
  } else if (surface == "Enriques") {
    doc.kind = SurfaceKind::Enriques;
  } else {
    throw ParseError("/surface", "must be \"K3\" or \"Enriques\"");
  }

  const json& gram = detail::require(root, "gram", "");
  if (!gram.is_array() || gram.empty()) throw ParseError("/gram", "expected a non-empty array of rows");
  const std::size_t rank = gram.size();
  doc.gram = IntMatrix(rank, rank);
  for (std::size_t i = 0; i < rank; ++i) {
    const DivisorClass row = detail::parse_vector(gram[i], "/gram/" + std::to_string(i));
    if (row.size() != rank) throw ParseError("/gram/" + std::to_string(i), "gram matrix is not square");
    for (std::size_t j = 0; j < rank; ++j) doc.gram(i, j) = row[j];
  }

  doc.ample = detail::parse_vector(detail::require(root, "ample", ""), "/ample");

  if (auto it = root.find("enriques_mode"); it != root.end()) {
    if (*it == "unnodal") {
      doc.options.mode = NodalMode::Unnodal;
    } else if (*it == "declared_nodal") {
      doc.options.mode = NodalMode::DeclaredNodal;
    } else {
      throw ParseError("/enriques_mode", "must be \"unnodal\" or \"declared_nodal\"");
    }
  }
  if (auto it = root.find("nodal_classes"); it != root.end())
    doc.options.nodal = detail::parse_vector_list(*it, "/nodal_classes");
  if (auto it = root.find("torsion_flips"); it != root.end())
    doc.options.torsion_flips = detail::parse_vector_list(*it, "/torsion_flips");

  if (auto it = root.find("bundles"); it != root.end()) {
    if (!it->is_array()) throw ParseError("/bundles", "expected an array");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string where = "/bundles/" + std::to_string(i);
      const json& b = (*it)[i];
      if (!b.is_object()) throw ParseError(where, "expected an object");
      detail::reject_unknown(b, {"label", "coords", "torsion"}, where);
      const json& label = detail::require(b, "label", where);
      if (!label.is_string() || label.get_ref<const std::string&>().empty())
        throw ParseError(where + "/label", "expected a non-empty string");
      LabeledBundle lb;
      lb.label = label.get<std::string>();
      if (!seen.insert(lb.label).second) throw ParseError(where + "/label", "duplicate label \"" + lb.label + "\"");
      lb.bundle.cls = detail::parse_vector(detail::require(b, "coords", where), where + "/coords");
      if (auto t = b.find("torsion"); t != b.end()) {
        const Integer bit = detail::parse_integer(*t, where + "/torsion");
        if (bit != 0 && bit != 1) throw ParseError(where + "/torsion", "torsion bit must be 0 or 1");
        lb.bundle.torsion = static_cast<int>(bit);
      }
      doc.bundles.push_back(std::move(lb));
    }
  }
  return doc;
}

/// Builds the validated surface context; throws ValidationError naming the
/// offending field.
inline SurfaceContext make_context(const InstanceDocument& doc) {
  std::optional<Lattice> lat;
  try {
    lat.emplace(doc.gram);
  } catch (const LatticeError& e) {
    throw ValidationError("gram", e.what());
  }
  if (doc.kind == SurfaceKind::K3 && doc.options.mode == NodalMode::DeclaredNodal)
    throw ValidationError("enriques_mode", "only valid for Enriques surfaces");
  if (doc.kind == SurfaceKind::K3 && !doc.options.torsion_flips.empty())
    throw ValidationError("torsion_flips", "only valid for Enriques surfaces");
  for (std::size_t i = 0; i < doc.bundles.size(); ++i) {
    const auto& b = doc.bundles[i];
    const std::string where = "bundles/" + std::to_string(i);
    if (b.bundle.cls.size() != lat->rank())
      throw ValidationError(where + "/coords", "expected " + std::to_string(lat->rank()) + " coordinates");
    if (doc.kind == SurfaceKind::K3 && b.bundle.torsion != 0)
      throw ValidationError(where + "/torsion", "K3 bundles carry no torsion bit");
  }
  return SurfaceContext(doc.kind, std::move(*lat), doc.ample, doc.options);
}

}  // namespace kvanish
