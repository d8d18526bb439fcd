#pragma once

// JSON documents exchanged by the command-line tool.
//
//   degeneration data  {"rank": t, "phi": [[int]], "b": [[int]], "a_basis": [int]}   (a_basis optional)
//   fan                {"rank": t, "lattice": [[int]], "simplices": [[[int]]]}
//   complex            {"vertices": [id], "edges": [[v, v]], "triangles": [[e, e, e]],
//                       "labels": {...}, "involution": {...}}                           (involution optional)
//   matrix             {"dim": n, "entries": [["p/q"]]}
//   permutation        {"perm": [16 ints]}
//
// Integers may be JSON numbers or decimal strings; output uses numbers when
// the value fits in 64 bits and strings otherwise.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kulikov/degeneration_data.hpp"
#include "kulikov/fan_engine.hpp"
#include "kulikov/monodromy.hpp"
#include "kulikov/strata_complex.hpp"

namespace kulikov::io {

using Json = nlohmann::json;

/// Malformed document: missing fields, wrong types or shapes.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Integer integer_from_json(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<std::uint64_t>()) : Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size() || s.find_first_not_of("0123456789", start) != std::string::npos)
      throw SchemaError(what + ": not an integer: \"" + s + "\"");
    return Integer(s[0] == '+' ? s.substr(1) : s);
  }
  throw SchemaError(what + ": expected an integer");
}

inline Json to_json(const Integer& x) {
  if (fits_int64(x)) return Json(static_cast<std::int64_t>(x));
  return Json(x.str());
}

inline Rational rational_from_json(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return Rational(integer_from_json(j, what));
  if (!j.is_string()) throw SchemaError(what + ": expected a rational string \"p/q\"");
  const auto s = j.get<std::string>();
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(integer_from_json(Json(s), what));
  const Integer p = integer_from_json(Json(s.substr(0, slash)), what);
  const Integer q = integer_from_json(Json(s.substr(slash + 1)), what);
  if (q == 0) throw SchemaError(what + ": zero denominator");
  return Rational(p) / Rational(q);
}

inline const Json& require(const Json& doc, const char* key) {
  if (!doc.is_object()) throw SchemaError("document must be a JSON object");
  auto it = doc.find(key);
  if (it == doc.end()) throw SchemaError(std::string("missing field \"") + key + "\"");
  return *it;
}

inline IntVector int_vector_from_json(const Json& j, const std::string& what) {
  if (!j.is_array()) throw SchemaError(what + ": expected an array");
  IntVector v;
  for (const auto& x : j) v.push_back(integer_from_json(x, what));
  return v;
}

inline IntMatrix int_matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& what) {
  if (!j.is_array() || j.size() != rows) throw SchemaError(what + ": expected " + std::to_string(rows) + " rows");
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const IntVector row = int_vector_from_json(j[i], what);
    if (row.size() != cols) throw SchemaError(what + ": expected " + std::to_string(cols) + " columns");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = row[c];
  }
  return m;
}

inline Json to_json(const IntVector& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(to_json(x));
  return j;
}

inline Json to_json(const IntMatrix& m) {
  Json j = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) j.push_back(to_json(m.row(i)));
  return j;
}

inline std::size_t rank_from_json(const Json& doc) {
  const Json& r = require(doc, "rank");
  if (!r.is_number_integer() || r.get<long long>() < 0) throw SchemaError("rank must be a non-negative integer");
  const auto t = r.get<long long>();
  if (t > 2) throw Error(ErrorCode::UnsupportedRank, "toric rank must be 0, 1 or 2");
  return static_cast<std::size_t>(t);
}

inline DegenerationData degeneration_data_from_json(const Json& doc) {
  const std::size_t t = rank_from_json(doc);
  IntMatrix phi = int_matrix_from_json(require(doc, "phi"), t, t, "phi");
  IntMatrix b = int_matrix_from_json(require(doc, "b"), t, t, "b");
  if (doc.contains("a_basis") && !doc["a_basis"].is_null()) {
    const IntVector a = int_vector_from_json(doc["a_basis"], "a_basis");
    if (a.size() != t) throw SchemaError("a_basis must have one entry per basis vector");
    return make_degeneration_data(t, std::move(phi), std::move(b), a);
  }
  return make_degeneration_data(t, std::move(phi), std::move(b));
}

inline Json to_json(const DegenerationData& d) {
  Json a = Json::array();
  for (const auto& x : d.a_basis) a.push_back(is_integral(x) ? to_json(numerator_of(x)) : Json(to_string(x)));
  return {{"rank", d.rank}, {"phi", to_json(d.phi)}, {"b", to_json(d.b)}, {"a_basis", a}};
}

inline Json to_json(const LatticeSimplex& s) {
  Json j = Json::array();
  for (const auto& v : s.vertices) j.push_back(to_json(v));
  return j;
}

inline LatticeSimplex simplex_from_json(const Json& j, std::size_t t) {
  if (!j.is_array() || j.empty()) throw SchemaError("simplex must be a non-empty array of vertices");
  std::vector<IntVector> vs;
  for (const auto& v : j) {
    IntVector x = int_vector_from_json(v, "simplex vertex");
    if (x.size() != t) throw SchemaError("simplex vertex length must equal the rank");
    vs.push_back(std::move(x));
  }
  return LatticeSimplex(std::move(vs));
}

inline PeriodicTriangulation fan_from_json(const Json& doc) {
  const std::size_t t = rank_from_json(doc);
  IntMatrix lattice = int_matrix_from_json(require(doc, "lattice"), t, t, "lattice");
  const Json& simplices = require(doc, "simplices");
  if (!simplices.is_array()) throw SchemaError("simplices must be an array");
  std::vector<LatticeSimplex> reps;
  for (const auto& s : simplices) reps.push_back(simplex_from_json(s, t));
  return PeriodicTriangulation(t, std::move(lattice), reps);
}

inline Json to_json(const PeriodicTriangulation& t) {
  Json simplices = Json::array();
  for (const auto& s : t.simplices()) simplices.push_back(to_json(s));
  return {{"rank", t.rank()}, {"lattice", to_json(t.lattice())}, {"simplices", simplices}};
}

inline Json to_json(const Certificates& c) {
  return {{"semistable", c.semistable},       {"vertex_cover", c.vertex_cover}, {"unimodular", c.unimodular},
          {"cover", c.cover},                 {"property_d", c.property_d},     {"h_free", c.h_free},
          {"gamma_admissible", c.gamma_admissible}, {"polarization", c.polarization}};
}

inline Json to_json(const std::vector<Violation>& vs) {
  Json j = Json::array();
  for (const auto& v : vs) j.push_back({{"lambda", to_json(v.lambda)}, {"simplex", to_json(v.simplex)}});
  return j;
}

inline Json to_json(const ScaledFan& s) {
  return {{"nu", to_json(s.nu)}, {"fan", to_json(s.fan.triangulation)}, {"certificates", to_json(s.fan.certificates)}};
}

namespace detail {

inline const char* dimension_key(std::size_t k) {
  static const char* keys[] = {"vertices", "edges", "triangles"};
  return keys[k];
}

}  // namespace detail

inline Json to_json(const DeltaComplex& c, const InvolutionAction* act = nullptr) {
  Json doc;
  Json labels;
  Json vertices = Json::array();
  for (std::size_t i = 0; i < c.count(0); ++i) vertices.push_back(i);
  doc["vertices"] = vertices;
  for (std::size_t k = 1; k < 3; ++k) {
    Json cells = Json::array();
    for (const auto& cell : c.cells[k]) cells.push_back(cell.faces);
    doc[detail::dimension_key(k)] = cells;
  }
  for (std::size_t k = 0; k < 3; ++k) {
    Json l = Json::array();
    for (const auto& cell : c.cells[k]) l.push_back(to_json(cell.label));
    labels[detail::dimension_key(k)] = l;
  }
  doc["labels"] = labels;
  if (act) {
    Json inv;
    for (std::size_t k = 0; k < 3; ++k) inv[detail::dimension_key(k)] = act->images[k];
    doc["involution"] = inv;
  }
  return doc;
}

struct ComplexDocument {
  DeltaComplex complex;
  std::optional<InvolutionAction> action;
};

inline ComplexDocument complex_from_json(const Json& doc) {
  ComplexDocument out;
  const Json& vertices = require(doc, "vertices");
  if (!vertices.is_array()) throw SchemaError("vertices must be an array");
  const std::size_t counts[3] = {vertices.size(), require(doc, "edges").size(), require(doc, "triangles").size()};
  std::size_t t = 0;
  bool have_labels = doc.contains("labels");
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t i = 0; i < counts[k]; ++i) {
      Cell cell;
      if (k > 0) {
        const Json& faces = doc[detail::dimension_key(k)][i];
        if (!faces.is_array() || faces.size() != k + 1)
          throw SchemaError(std::string(detail::dimension_key(k)) + " entries must list " + std::to_string(k + 1) + " faces");
        for (const auto& f : faces) {
          if (!f.is_number_unsigned() || f.get<std::size_t>() >= counts[k - 1])
            throw SchemaError("face index out of range");
          cell.faces.push_back(f.get<std::size_t>());
        }
      }
      if (have_labels) {
        const Json& l = doc["labels"][detail::dimension_key(k)][i];
        if (k == 0 && !l.empty()) t = l[0].size();
        cell.label = simplex_from_json(l, t);
      }
      out.complex.cells[k].push_back(std::move(cell));
    }
  }
  if (doc.contains("involution")) {
    InvolutionAction act;
    for (std::size_t k = 0; k < 3; ++k) {
      const Json& img = doc["involution"][detail::dimension_key(k)];
      if (!img.is_array() || img.size() != counts[k]) throw SchemaError("involution size does not match the complex");
      for (const auto& x : img) {
        if (!x.is_number_unsigned()) throw SchemaError("involution entries must be cell indices");
        act.images[k].push_back(x.get<std::size_t>());
      }
    }
    out.action = std::move(act);
  }
  return out;
}

inline Json to_json(const RationalOperator& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(row);
  }
  return {{"dim", m.rows()}, {"entries", rows}};
}

inline RationalOperator operator_from_json(const Json& doc) {
  const Json& dim = require(doc, "dim");
  if (!dim.is_number_unsigned()) throw SchemaError("dim must be a non-negative integer");
  const std::size_t n = dim.get<std::size_t>();
  const Json& entries = require(doc, "entries");
  if (!entries.is_array() || entries.size() != n) throw SchemaError("entries must have dim rows");
  RationalOperator m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!entries[i].is_array() || entries[i].size() != n) throw SchemaError("entries must have dim columns");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rational_from_json(entries[i][j], "matrix entry");
  }
  return m;
}

inline TwoTorsionPermutation permutation_from_json(const Json& doc) {
  const Json& p = require(doc, "perm");
  if (!p.is_array()) throw SchemaError("perm must be an array");
  std::vector<int> perm;
  for (const auto& x : p) {
    if (!x.is_number_integer()) throw SchemaError("perm entries must be integers");
    perm.push_back(x.get<int>());
  }
  try {
    return TwoTorsionPermutation(std::move(perm));
  } catch (const Error& e) {
    throw SchemaError(e.what());
  }
}

}  // namespace kulikov::io
