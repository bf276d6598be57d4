#pragma once

// JSON encodings of the library's objects. Rationals are strings "n" or "n/d".
//
//   element    {"terms": [{"coeff": "-3/2", "I": [1], "J": [1, 2]}, ...]}
//   matrix     {"rows": r, "cols": c, "entries": [[row, col, "v"], ...]}  (0-based)
//   dense      [["1", "0"], ["0", "1"]]
//   lie        {"d": 3, "c": [[i, j, k, "v"], ...]}  meaning [x_i, x_j] += v x_k, 1-based, i < j
//   bialgebra  {"name": ..., "n": n, "mu": dense n x n^2, "delta": dense n^2 x n,
//               "unit": [...], "counit": [...]}

#include <bigbracket/error.hpp>
#include <bigbracket/graded.hpp>
#include <bigbracket/gs_complex.hpp>
#include <bigbracket/lie.hpp>
#include <bigbracket/linalg.hpp>
#include <bigbracket/rational.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace bigbracket::json_io {

using json = nlohmann::ordered_json;

/// Parses text, reporting syntax errors as "source:line:column: message".
inline json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string msg = e.what();
    if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": malformed JSON: " +
                     msg);
  }
}

inline json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

inline const json& field(const json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) throw InputError(what + ": missing field \"" + key + "\"");
  return j.at(key);
}

inline int to_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw InputError(what + ": expected an integer");
  return j.get<int>();
}

inline Rational to_rational(const json& j, const std::string& what) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw InputError(what + ": expected a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw InputError(what + ": " + e.what());
  }
}

inline json from_rational(const Rational& q) { return to_string(q); }

inline std::vector<int> to_index_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + ": expected an index array");
  std::vector<int> out;
  for (const auto& v : j) out.push_back(to_int(v, what));
  return out;
}

// ---------------------------------------------------------------------------

inline Element element_from_json(const json& j) {
  const auto& terms = field(j, "terms", "element");
  if (!terms.is_array()) throw InputError("element: \"terms\" must be an array");
  Element out;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string what = "element term " + std::to_string(k);
    const auto& t = terms[k];
    auto I = to_index_list(field(t, "I", what), what);
    auto J = to_index_list(field(t, "J", what), what);
    out.add(Monomial::from_indices(I, J), to_rational(field(t, "coeff", what), what));
  }
  return out;
}

inline json element_to_json(const Element& x) {
  json terms = json::array();
  for (const auto& [m, c] : x.terms())
    terms.push_back({{"coeff", from_rational(c)}, {"I", m.I()}, {"J", m.J()}});
  return {{"terms", terms}};
}

inline json matrix_to_json(const RationalMatrix& m) {
  json entries = json::array();
  for (const auto& [r, c, v] : m.entries()) entries.push_back({r, c, from_rational(v)});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

inline RationalMatrix matrix_from_json(const json& j) {
  const int rows = to_int(field(j, "rows", "matrix"), "matrix rows");
  const int cols = to_int(field(j, "cols", "matrix"), "matrix cols");
  if (rows < 0 || cols < 0) throw InputError("matrix: negative size");
  RationalMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (const auto& e : field(j, "entries", "matrix")) {
    if (!e.is_array() || e.size() != 3) throw InputError("matrix entry must be [row, col, value]");
    const int r = to_int(e[0], "matrix entry"), c = to_int(e[1], "matrix entry");
    if (r < 0 || c < 0 || r >= rows || c >= cols) throw InputError("matrix entry out of range");
    m.add(static_cast<std::size_t>(r), static_cast<std::size_t>(c), to_rational(e[2], "matrix entry"));
  }
  return m;
}

inline json dense_to_json(const RationalMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(from_rational(m.get(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline RationalMatrix dense_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + ": expected an array of rows");
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw InputError(what + ": each row must be an array");
    std::vector<Rational> r;
    for (const auto& v : row) r.push_back(to_rational(v, what));
    rows.push_back(std::move(r));
  }
  try {
    return RationalMatrix::from_dense(rows);
  } catch (const InputError& e) {
    throw InputError(what + ": " + e.what());
  }
}

inline Vector vector_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + ": expected an array");
  Vector out;
  for (const auto& v : j) out.push_back(to_rational(v, what));
  return out;
}

/// A symmetric form on W, either dense or under the key "form".
inline RationalMatrix form_from_json(const json& j) {
  if (j.is_object()) return dense_from_json(field(j, "form", "form"), "form");
  return dense_from_json(j, "form");
}

// ---------------------------------------------------------------------------

inline LieAlgebraData lie_from_json(const json& j) {
  const int d = to_int(field(j, "d", "lie algebra"), "lie algebra d");
  std::vector<StructureConstant> constants;
  for (const auto& e : field(j, "c", "lie algebra")) {
    if (!e.is_array() || e.size() != 4) throw InputError("structure constant must be [i, j, k, value]");
    constants.push_back({to_int(e[0], "structure constant"), to_int(e[1], "structure constant"),
                         to_int(e[2], "structure constant"), to_rational(e[3], "structure constant")});
  }
  return LieAlgebraData(d, constants);
}

inline json lie_to_json(const LieAlgebraData& g) {
  json c = json::array();
  for (const auto& sc : g.constants()) c.push_back({sc.i, sc.j, sc.k, from_rational(sc.value)});
  return {{"d", g.dim()}, {"c", c}};
}

inline FiniteBialgebra bialgebra_from_json(const json& j) {
  const std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "custom";
  const int n = to_int(field(j, "n", "bialgebra"), "bialgebra n");
  if (n < 1 || n > 8) throw InputError("bialgebra n must be between 1 and 8");
  auto mu = dense_from_json(field(j, "mu", "bialgebra"), "bialgebra mu");
  auto delta = dense_from_json(field(j, "delta", "bialgebra"), "bialgebra delta");
  auto unit = vector_from_json(field(j, "unit", "bialgebra"), "bialgebra unit");
  auto counit = vector_from_json(field(j, "counit", "bialgebra"), "bialgebra counit");
  const auto un = static_cast<std::size_t>(n);
  if (mu.rows() != un || mu.cols() != un * un) throw InputError("bialgebra mu must be n x n^2");
  return FiniteBialgebra(name, std::move(mu), std::move(delta), std::move(unit), std::move(counit));
}

inline json bialgebra_to_json(const FiniteBialgebra& A) {
  json unit = json::array(), counit = json::array();
  for (const auto& v : A.unit()) unit.push_back(from_rational(v));
  for (const auto& v : A.counit()) counit.push_back(from_rational(v));
  return {{"name", A.name()}, {"n", A.dim()},          {"mu", dense_to_json(A.mu())},
          {"delta", dense_to_json(A.delta())}, {"unit", unit}, {"counit", counit}};
}

}  // namespace bigbracket::json_io
