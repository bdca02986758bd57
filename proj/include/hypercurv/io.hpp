#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypercurv/bounds.hpp"
#include "hypercurv/curvature.hpp"
#include "hypercurv/hypercore.hpp"
#include "hypercurv/scalar.hpp"

namespace hypercurv {

using Json = nlohmann::ordered_json;

/// Parsed input file. Vertex and edge names are always filled in: vertices
/// default to their index ("0", "1", ...) and hyperedges to "e<index>".
struct Document {
  struct Edge {
    std::optional<std::string> name;
    VertexSet tail;  // the vertex list for undirected documents
    VertexSet head;
    Rational weight{1};
  };

  Flavor flavor = Flavor::undirected;
  bool named_vertices = false;
  std::vector<std::string> vertex_names;
  std::vector<Edge> edges;
  bool symmetrize = false;

  std::size_t vertex_count() const { return vertex_names.size(); }
};

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, "at " + (where.empty() ? std::string("/") : where) + ": " + what);
}

inline std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line, col = 1;
    else ++col;
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline Rational json_rational(const Json& j, const std::string& where) {
  try {
    if (j.is_number_integer() || j.is_number_unsigned() || j.is_number_float()) return parse_rational(j.dump());
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    parse_fail(where, e.what());
  }
  parse_fail(where, "expected a number or a \"p/q\" string");
}

inline bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace detail

/// Vertex reference by name, or by 0-based index (JSON integer or digit string).
inline std::optional<VertexId> find_vertex(const Document& doc, std::string_view ref) {
  auto it = std::find(doc.vertex_names.begin(), doc.vertex_names.end(), ref);
  if (it != doc.vertex_names.end()) return static_cast<VertexId>(it - doc.vertex_names.begin());
  if (detail::all_digits(ref) && ref.size() < 10) {
    auto idx = std::stoul(std::string(ref));
    if (idx < doc.vertex_count()) return static_cast<VertexId>(idx);
  }
  return std::nullopt;
}

inline std::string edge_name(const Document& doc, EdgeId e) {
  if (e < doc.edges.size() && doc.edges[e].name) return *doc.edges[e].name;
  return "e" + std::to_string(e);
}

namespace detail {

inline VertexId json_vertex(const Document& doc, const Json& j, const std::string& where) {
  if (j.is_number_unsigned() || j.is_number_integer()) {
    auto v = j.get<long long>();
    if (v < 0 || static_cast<std::size_t>(v) >= doc.vertex_count())
      throw Error(ErrorCode::VertexOutOfRange, "at " + where + ": vertex index " + std::to_string(v));
    return static_cast<VertexId>(v);
  }
  if (!j.is_string()) parse_fail(where, "expected a vertex name or index");
  auto v = find_vertex(doc, j.get<std::string>());
  if (!v) throw Error(ErrorCode::VertexOutOfRange, "at " + where + ": unknown vertex \"" + j.get<std::string>() + "\"");
  return *v;
}

inline VertexSet json_vertex_list(const Document& doc, const Json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where, "expected an array of vertices");
  VertexSet out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    VertexId v = json_vertex(doc, j[i], where + "/" + std::to_string(i));
    if (std::find(out.begin(), out.end(), v) != out.end())
      throw Error(ErrorCode::DuplicateVertex, "at " + where + "/" + std::to_string(i) + ": repeated vertex");
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Parses the JSON hypergraph document. Syntax errors report line and
/// column, structural errors a JSON pointer to the offending field.
inline Document parse_document(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, detail::line_col(text, e.byte == 0 ? 0 : e.byte - 1) + ": malformed JSON");
  }
  if (!root.is_object()) detail::parse_fail("", "expected an object");
  for (const auto& [key, _] : root.items())
    if (key != "flavor" && key != "vertices" && key != "vertex_count" && key != "hyperedges" && key != "symmetrize")
      detail::parse_fail("/" + key, "unknown field");

  Document doc;
  if (!root.contains("flavor") || !root["flavor"].is_string()) detail::parse_fail("/flavor", "expected a string");
  const auto flavor = root["flavor"].get<std::string>();
  if (flavor == "undirected") doc.flavor = Flavor::undirected;
  else if (flavor == "directed") doc.flavor = Flavor::directed;
  else if (flavor == "oriented") doc.flavor = Flavor::oriented;
  else detail::parse_fail("/flavor", "expected undirected, directed or oriented");

  if (root.contains("vertices") == root.contains("vertex_count"))
    detail::parse_fail("", "exactly one of vertices, vertex_count is required");
  if (root.contains("vertices")) {
    const auto& vs = root["vertices"];
    if (!vs.is_array()) detail::parse_fail("/vertices", "expected an array of names");
    doc.named_vertices = true;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const auto where = "/vertices/" + std::to_string(i);
      if (!vs[i].is_string()) detail::parse_fail(where, "expected a string");
      auto name = vs[i].get<std::string>();
      if (std::find(doc.vertex_names.begin(), doc.vertex_names.end(), name) != doc.vertex_names.end())
        detail::parse_fail(where, "duplicate vertex name \"" + name + "\"");
      if (detail::all_digits(name) && name != std::to_string(i))
        detail::parse_fail(where, "numeric vertex name must equal its index");
      doc.vertex_names.push_back(std::move(name));
    }
  } else {
    const auto& n = root["vertex_count"];
    if (!n.is_number_unsigned() && !(n.is_number_integer() && n.get<long long>() >= 0))
      detail::parse_fail("/vertex_count", "expected a nonnegative integer");
    for (std::size_t i = 0; i < n.get<std::size_t>(); ++i) doc.vertex_names.push_back(std::to_string(i));
  }

  if (root.contains("symmetrize")) {
    if (!root["symmetrize"].is_boolean()) detail::parse_fail("/symmetrize", "expected a boolean");
    doc.symmetrize = root["symmetrize"].get<bool>();
    if (doc.symmetrize && doc.flavor != Flavor::oriented)
      detail::parse_fail("/symmetrize", "only meaningful for oriented documents");
  }

  if (!root.contains("hyperedges") || !root["hyperedges"].is_array())
    detail::parse_fail("/hyperedges", "expected an array");
  const auto& hs = root["hyperedges"];
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const auto where = "/hyperedges/" + std::to_string(i);
    const auto& h = hs[i];
    if (!h.is_object()) detail::parse_fail(where, "expected an object");
    Document::Edge e;
    for (const auto& [key, _] : h.items()) {
      const bool ok = key == "name" || key == "weight" ||
                      (doc.flavor == Flavor::undirected ? key == "vertices" : (key == "tail" || key == "head"));
      if (!ok) detail::parse_fail(where + "/" + key, "unknown field for a " + flavor + " hyperedge");
    }
    if (h.contains("name")) {
      if (!h["name"].is_string()) detail::parse_fail(where + "/name", "expected a string");
      e.name = h["name"].get<std::string>();
    }
    e.weight = h.contains("weight") ? detail::json_rational(h["weight"], where + "/weight") : Rational(1);
    if (doc.flavor == Flavor::undirected) {
      if (!h.contains("vertices")) detail::parse_fail(where + "/vertices", "missing");
      e.tail = detail::json_vertex_list(doc, h["vertices"], where + "/vertices");
      e.head = e.tail;
    } else {
      if (!h.contains("tail")) detail::parse_fail(where + "/tail", "missing");
      if (!h.contains("head")) detail::parse_fail(where + "/head", "missing");
      e.tail = detail::json_vertex_list(doc, h["tail"], where + "/tail");
      e.head = detail::json_vertex_list(doc, h["head"], where + "/head");
    }
    doc.edges.push_back(std::move(e));
  }
  std::vector<std::string> names;
  for (EdgeId e = 0; e < doc.edges.size(); ++e) {
    auto name = edge_name(doc, e);
    if (std::find(names.begin(), names.end(), name) != names.end())
      detail::parse_fail("/hyperedges/" + std::to_string(e) + "/name", "duplicate hyperedge name \"" + name + "\"");
    names.push_back(std::move(name));
  }
  return doc;
}

inline Document read_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

/// Builds the hypergraph. With `symmetrize` the missing reversals are
/// appended after the document's hyperedges and named "<name>~".
template <class S>
Hypergraph<S> build(Document& doc) {
  const auto n = doc.vertex_count();
  auto weight = [](const Rational& w) { return scalar_traits<S>::from_rational(w); };
  if (doc.flavor == Flavor::undirected) {
    std::vector<UndirectedHyperedge<S>> es;
    for (const auto& e : doc.edges) es.push_back({e.tail, weight(e.weight)});
    return Hypergraph<S>::undirected(n, es);
  }
  std::vector<DirectedHyperedge<S>> es;
  for (const auto& e : doc.edges) es.push_back({e.tail, e.head, weight(e.weight)});
  if (doc.flavor == Flavor::directed) return Hypergraph<S>::directed(n, es);
  auto hg = Hypergraph<S>::oriented(n, es, doc.symmetrize);
  for (EdgeId e = static_cast<EdgeId>(doc.edges.size()); e < hg.edge_count(); ++e) {
    const auto& h = hg.edge(e);
    Document::Edge added{std::nullopt, h.tail, h.head, Rational(1)};
    for (EdgeId f = 0; f < e; ++f) {
      const auto& src = doc.edges[f];
      if (src.tail == h.head && src.head == h.tail) {
        added.weight = src.weight;
        added.name = edge_name(doc, f) + "~";
        break;
      }
    }
    doc.edges.push_back(std::move(added));
  }
  doc.symmetrize = false;
  return hg;
}

/// Canonical form: explicit fields, edges in stored order, weights as strings.
inline Json serialize(const Document& doc) {
  Json root;
  root["flavor"] = std::string(to_string(doc.flavor));
  if (doc.named_vertices) root["vertices"] = doc.vertex_names;
  else root["vertex_count"] = doc.vertex_count();
  auto names = [&](const VertexSet& vs) {
    Json arr = Json::array();
    for (VertexId v : vs) {
      if (doc.named_vertices) arr.push_back(doc.vertex_names[v]);
      else arr.push_back(v);
    }
    return arr;
  };
  Json hs = Json::array();
  for (EdgeId e = 0; e < doc.edges.size(); ++e) {
    const auto& h = doc.edges[e];
    Json j;
    j["name"] = edge_name(doc, e);
    if (doc.flavor == Flavor::undirected) {
      j["vertices"] = names(h.tail);
    } else {
      j["tail"] = names(h.tail);
      j["head"] = names(h.head);
    }
    j["weight"] = scalar_traits<Rational>::format(h.weight);
    hs.push_back(std::move(j));
  }
  root["hyperedges"] = std::move(hs);
  if (doc.symmetrize) root["symmetrize"] = true;
  return root;
}

inline VertexId resolve_vertex(const Document& doc, std::string_view ref) {
  auto v = find_vertex(doc, ref);
  if (!v) throw Error(ErrorCode::UnknownTarget, "no vertex \"" + std::string(ref) + "\"");
  return *v;
}

/// Edge reference by name, default name "e<i>", or index.
inline EdgeId resolve_edge(const Document& doc, std::string_view ref) {
  for (EdgeId e = 0; e < doc.edges.size(); ++e)
    if (edge_name(doc, e) == ref) return e;
  if (detail::all_digits(ref) && ref.size() < 10) {
    auto idx = std::stoul(std::string(ref));
    if (idx < doc.edges.size()) return static_cast<EdgeId>(idx);
  }
  throw Error(ErrorCode::UnknownTarget, "no hyperedge \"" + std::string(ref) + "\"");
}

inline std::string describe(const Document& doc, const Target& t) {
  if (const auto* p = std::get_if<PairTarget>(&t)) return doc.vertex_names[p->u] + "," + doc.vertex_names[p->v];
  return edge_name(doc, std::get<EdgeTarget>(t).edge);
}

enum class OutputFormat { json, csv, table };

inline OutputFormat parse_output_format(std::string_view s) {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  if (s == "table") return OutputFormat::table;
  throw Error(ErrorCode::ParseError, "unknown output format " + std::string(s));
}

/// Settings shared by every subcommand.
struct RunConfig {
  std::vector<Rational> grid;  // empty: default grid
  std::optional<Rational> alpha;
  LengthVariant variant = LengthVariant::sum;
  bool exact = true;
  double tol = kDefaultTolerance;
  OutputFormat format = OutputFormat::json;
  unsigned threads = 1;
  bool strict = false;

  void validate() const {
    if (!(tol > 0)) throw Error(ErrorCode::ParseError, "tolerance must be positive");
    for (const auto& a : grid)
      if (a < 0 || a > 1) throw Error(ErrorCode::AlphaOutOfRange, "grid value " + scalar_traits<Rational>::format(a));
    if (alpha && (*alpha < 0 || *alpha > 1))
      throw Error(ErrorCode::AlphaOutOfRange, "alpha " + scalar_traits<Rational>::format(*alpha));
  }

  template <class S>
  std::vector<S> grid_as() const {
    if (grid.empty()) return default_alpha_grid<S>();
    std::vector<S> out;
    for (const auto& a : grid) out.push_back(scalar_traits<S>::from_rational(a));
    return out;
  }
};

/// Accepts "p/q", integers and decimals exactly; anything else a double goes
/// through the best rational with denominator <= 2^32.
inline Rational parse_alpha(std::string_view s) {
  try {
    return parse_rational(s);
  } catch (const Error&) {
    try {
      return rationalize(std::stod(std::string(s)));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "cannot read \"" + std::string(s) + "\" as a number");
    }
  }
}

inline std::vector<Rational> parse_alpha_grid(std::string_view s) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto end = s.find(',', start);
    if (end == std::string_view::npos) end = s.size();
    auto item = s.substr(start, end - start);
    if (!item.empty()) out.push_back(parse_alpha(item));
    start = end + 1;
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, "empty alpha grid");
  return out;
}

/// Plain text table with left-aligned columns.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string str() const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_)
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (width.size() <= i) width.push_back(0);
        width[i] = std::max(width[i], r[i].size());
      }
    std::string out;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const auto& r = rows_[k];
      std::string line;
      for (std::size_t i = 0; i < r.size(); ++i) {
        line += r[i];
        if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
      }
      line.erase(line.find_last_not_of(' ') + 1);
      out += line + "\n";
      if (k == 0) {
        std::size_t total = 0;
        for (std::size_t i = 0; i < width.size(); ++i) total += width[i] + (i + 1 < width.size() ? 2 : 0);
        out += std::string(total, '-') + "\n";
      }
    }
    return out;
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  return out + "\n";
}

}  // namespace hypercurv
