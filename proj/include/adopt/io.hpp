#pragma once

#include "adopt/bounds.hpp"
#include "adopt/metric.hpp"
#include "adopt/mst.hpp"
#include "adopt/report.hpp"
#include "adopt/spanning_tree.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace adopt {

using Json = nlohmann::json;

/// Parsed instance file. Points carry double weights; matrix and tree
/// sources are read exactly.
struct InstanceFile {
  std::variant<MetricInstance<Rational>, MetricInstance<double>> metric;
  std::optional<std::vector<Edge>> initial_tree;
  std::optional<DegreeBounds> bounds;

  std::size_t size() const {
    return std::visit([](const auto& m) { return m.size(); }, metric);
  }
  SourceKind kind() const {
    return std::visit([](const auto& m) { return m.kind(); }, metric);
  }
};

inline Json weight_to_json(const Rational& r) {
  if (r.denominator() == 1) return r.numerator();
  return format_weight(r);
}
inline Json weight_to_json(double x) { return x; }

namespace detail {

inline Rational json_rational(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_float()) {
    std::string text = j.dump();
    if (text.find_first_of("eE") != std::string::npos) {
      throw ParseError(where + ": write '" + text + "' as a decimal or p/q");
    }
    return parse_rational(text);
  }
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  throw ParseError(where + ": expected a number or a \"p/q\" string");
}

inline const Json& require(const Json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

inline std::size_t json_index(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
    throw ParseError(where + ": expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

inline std::vector<Edge> json_edges(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of [u, v] pairs");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& e = j[i];
    std::string at = where + "[" + std::to_string(i) + "]";
    if (!e.is_array() || e.size() != 2) throw ParseError(at + ": expected [u, v]");
    edges.push_back({json_index(e[0], at), json_index(e[1], at)});
  }
  return edges;
}

inline Json edges_to_json(const std::vector<Edge>& edges) {
  Json out = Json::array();
  for (const Edge& e : edges) out.push_back({e.u, e.v});
  return out;
}

}  // namespace detail

/// Instance documents are JSON objects:
///   n        vertex count
///   source   "matrix" | "points" | "tree"
///   matrix   upper triangle, row-major: w(0,1), w(0,2), ..., w(n-2,n-1)
///   points   [[x, y], ...] with norm "l1" | "l2" | "linf"
///   tree_edges [[u, v], ...] with tree_weights aligned to it
///   initial_tree  optional [[u, v], ...]; defaults to the weight tree
///                 for tree sources and a minimum spanning tree otherwise
///   bounds   optional [d(0), ..., d(n-1)]
/// Exact weights are integers or strings "p/q" / "1.25".
inline InstanceFile parse_instance(const Json& doc) {
  if (!doc.is_object()) throw ParseError("instance must be a JSON object");
  std::size_t n = detail::json_index(detail::require(doc, "n"), "n");
  const Json& src = detail::require(doc, "source");
  if (!src.is_string()) throw ParseError("source must be a string");
  std::string source = src.get<std::string>();
  InstanceFile file;
  try {
    if (source == "matrix") {
      const Json& m = detail::require(doc, "matrix");
      if (!m.is_array()) throw ParseError("matrix must be an array");
      std::vector<Rational> upper;
      for (std::size_t i = 0; i < m.size(); ++i) {
        upper.push_back(detail::json_rational(m[i], "matrix[" + std::to_string(i) + "]"));
      }
      file.metric = MetricInstance<Rational>::from_upper_triangle(n, upper);
    } else if (source == "points") {
      const Json& p = detail::require(doc, "points");
      if (!p.is_array() || p.size() != n) throw ParseError("points must hold n [x, y] pairs");
      std::vector<Point> pts;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (!p[i].is_array() || p[i].size() != 2 || !p[i][0].is_number() || !p[i][1].is_number()) {
          throw ParseError("points[" + std::to_string(i) + "]: expected [x, y]");
        }
        pts.push_back({p[i][0].get<double>(), p[i][1].get<double>()});
      }
      Norm norm = Norm::L2;
      if (auto it = doc.find("norm"); it != doc.end()) norm = parse_norm(it->get<std::string>());
      file.metric = MetricInstance<double>::from_points(std::move(pts), norm);
    } else if (source == "tree") {
      auto edges = detail::json_edges(detail::require(doc, "tree_edges"), "tree_edges");
      const Json& w = detail::require(doc, "tree_weights");
      if (!w.is_array() || w.size() != edges.size()) {
        throw ParseError("tree_weights must have one entry per tree edge");
      }
      if (auto problems = tree_problems(n, edges); !problems.empty()) {
        throw ParseError("tree_edges: " + problems.front());
      }
      std::vector<WeightedEdge<Rational>> weighted;
      for (std::size_t i = 0; i < edges.size(); ++i) {
        Rational x = detail::json_rational(w[i], "tree_weights[" + std::to_string(i) + "]");
        if (x < 0) throw ParseError("tree_weights[" + std::to_string(i) + "] is negative");
        weighted.push_back({edges[i].u, edges[i].v, x});
      }
      file.metric = MetricInstance<Rational>::from_tree(n, std::move(weighted));
    } else {
      throw ParseError("unknown source '" + source + "' (expected matrix, points or tree)");
    }
    if (auto it = doc.find("initial_tree"); it != doc.end()) {
      file.initial_tree = detail::json_edges(*it, "initial_tree");
    }
    if (auto it = doc.find("bounds"); it != doc.end()) {
      if (!it->is_array() || it->size() != n) throw ParseError("bounds must hold n integers");
      std::vector<std::size_t> d;
      for (std::size_t i = 0; i < it->size(); ++i) d.push_back(detail::json_index((*it)[i], "bounds"));
      file.bounds = DegreeBounds(std::move(d));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Json::exception& e) {
    throw ParseError(e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
  return file;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline InstanceFile read_instance(const std::string& path) { return parse_instance(read_json_file(path)); }

template <WeightType W>
Json instance_to_json(const MetricInstance<W>& instance, const std::optional<DegreeBounds>& bounds = std::nullopt,
                      const std::optional<SpanningTree>& initial_tree = std::nullopt) {
  Json doc;
  std::size_t n = instance.size();
  doc["n"] = n;
  switch (instance.kind()) {
    case SourceKind::Matrix: {
      doc["source"] = "matrix";
      Json m = Json::array();
      for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) m.push_back(weight_to_json(instance(u, v)));
      }
      doc["matrix"] = std::move(m);
      break;
    }
    case SourceKind::Points: {
      doc["source"] = "points";
      doc["norm"] = std::string(norm_name(instance.norm()));
      Json p = Json::array();
      for (const Point& q : instance.points()) p.push_back({q.x, q.y});
      doc["points"] = std::move(p);
      break;
    }
    case SourceKind::Tree: {
      doc["source"] = "tree";
      Json e = Json::array(), w = Json::array();
      for (const auto& te : instance.tree_edges()) {
        e.push_back({te.u, te.v});
        w.push_back(weight_to_json(te.weight));
      }
      doc["tree_edges"] = std::move(e);
      doc["tree_weights"] = std::move(w);
      break;
    }
  }
  if (initial_tree) doc["initial_tree"] = detail::edges_to_json(initial_tree->edges());
  if (bounds) doc["bounds"] = bounds->values();
  return doc;
}

/// The tree an instance file starts from.
template <WeightType W>
SpanningTree initial_tree(const InstanceFile& file, const MetricInstance<W>& instance) {
  if (file.initial_tree) {
    if (auto problems = tree_problems(instance.size(), *file.initial_tree); !problems.empty()) {
      throw ParseError("initial_tree: " + problems.front());
    }
    return SpanningTree::from_edges(instance.size(), *file.initial_tree);
  }
  if (instance.kind() == SourceKind::Tree) {
    std::vector<Edge> edges;
    for (const auto& e : instance.tree_edges()) edges.push_back({e.u, e.v});
    return SpanningTree::from_edges(instance.size(), edges);
  }
  return mst(instance);
}

/// Tree documents: {"n": n, "edges": [[u, v], ...]}.
inline Json tree_to_json(const SpanningTree& tree) {
  return Json{{"n", tree.vertex_count()}, {"edges", detail::edges_to_json(tree.edges())}};
}

struct TreeFile {
  std::size_t n = 0;
  std::vector<Edge> edges;
};

inline TreeFile parse_tree(const Json& doc) {
  if (!doc.is_object()) throw ParseError("tree file must be a JSON object");
  TreeFile t;
  t.n = detail::json_index(detail::require(doc, "n"), "n");
  t.edges = detail::json_edges(detail::require(doc, "edges"), "edges");
  return t;
}

enum class OutputFormat { Text, Csv, Json };

inline OutputFormat parse_format(std::string_view s) {
  if (s == "text") return OutputFormat::Text;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  throw ParseError("unknown format '" + std::string(s) + "' (expected text, csv or json)");
}

template <WeightType W>
void write_report(std::ostream& os, const SolveReport<W>& r, OutputFormat format) {
  auto opt = [](const std::optional<Rational>& x) { return x ? format_weight(*x) : std::string("n/a"); };
  switch (format) {
    case OutputFormat::Text:
      os << "algorithm     " << r.algorithm << '\n'
         << "w(T)          " << format_weight(r.input_weight) << '\n'
         << "w(T')         " << format_weight(r.output_weight) << '\n'
         << "flow cost     " << format_weight(r.flow_cost) << '\n'
         << "realized      " << format_weight(r.realized_delta) << '\n'
         << "c             " << opt(r.c) << '\n'
         << "bound         " << opt(r.bound) << '\n'
         << "ratio         " << format_weight(r.ratio) << " (" << std::setprecision(6) << to_double(r.ratio)
         << ")\n"
         << "meets_bounds  " << (r.meets_bounds ? "true" : "false") << '\n';
      for (const auto& w : r.warnings) os << "warning       " << w << '\n';
      break;
    case OutputFormat::Csv:
      os << "algorithm,w_T,w_T_prime,flow_cost,realized_delta,c,bound,ratio,meets_bounds\n"
         << r.algorithm << ',' << format_weight(r.input_weight) << ',' << format_weight(r.output_weight) << ','
         << format_weight(r.flow_cost) << ',' << format_weight(r.realized_delta) << ',' << opt(r.c) << ','
         << opt(r.bound) << ',' << format_weight(r.ratio) << ',' << (r.meets_bounds ? "true" : "false") << '\n';
      break;
    case OutputFormat::Json: {
      Json doc{{"algorithm", r.algorithm},
               {"w_T", format_weight(r.input_weight)},
               {"w_T_prime", format_weight(r.output_weight)},
               {"flow_cost", format_weight(r.flow_cost)},
               {"realized_delta", format_weight(r.realized_delta)},
               {"c", r.c ? Json(format_weight(*r.c)) : Json(nullptr)},
               {"bound", r.bound ? Json(format_weight(*r.bound)) : Json(nullptr)},
               {"ratio", format_weight(r.ratio)},
               {"meets_bounds", r.meets_bounds},
               {"warnings", r.warnings}};
      os << doc.dump(2) << '\n';
      break;
    }
  }
}

}  // namespace adopt
