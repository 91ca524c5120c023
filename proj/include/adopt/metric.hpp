#pragma once

#include "adopt/spanning_tree.hpp"
#include "adopt/types.hpp"

#include <bit>
#include <cmath>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace adopt {

enum class Norm { L1, L2, Linf };

inline std::string_view norm_name(Norm norm) {
  switch (norm) {
    case Norm::L1: return "l1";
    case Norm::L2: return "l2";
    case Norm::Linf: return "linf";
  }
  return "?";
}

inline Norm parse_norm(std::string_view s) {
  if (s == "l1" || s == "L1") return Norm::L1;
  if (s == "l2" || s == "L2") return Norm::L2;
  if (s == "linf" || s == "Linf" || s == "LINF") return Norm::Linf;
  throw ParseError("unknown norm '" + std::string(s) + "' (expected l1, l2 or linf)");
}

struct Point {
  double x = 0;
  double y = 0;
  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

inline double distance(const Point& a, const Point& b, Norm norm) {
  double dx = std::abs(a.x - b.x);
  double dy = std::abs(a.y - b.y);
  switch (norm) {
    case Norm::L1: return dx + dy;
    case Norm::L2: return std::hypot(dx, dy);
    case Norm::Linf: return std::max(dx, dy);
  }
  return 0;
}

template <WeightType W>
struct WeightedEdge {
  Vertex u = 0;
  Vertex v = 0;
  W weight{};
};

/// Path weights of a fixed weighted tree. Small trees answer a query by
/// walking both endpoints up to their common ancestor; larger ones use
/// depth-weight prefixes and an Euler-tour range-minimum table for the LCA,
/// so every query is O(1).
template <WeightType W>
class TreePathMetric {
 public:
  static constexpr std::size_t kTableThreshold = 64;

  TreePathMetric(std::size_t n, std::vector<WeightedEdge<W>> edges)
      : edges_(std::move(edges)) {
    std::vector<Edge> plain;
    plain.reserve(edges_.size());
    for (const auto& e : edges_) {
      if (e.weight < W(0)) throw InvalidArgument("negative base weight in inducing tree");
      plain.push_back({e.u, e.v});
    }
    SpanningTree tree = SpanningTree::from_edges(n, plain);
    std::vector<W> edge_weight(edges_.size());
    // Half-edges 2e/2e+1 belong to the e-th inserted edge.
    for (std::size_t e = 0; e < edges_.size(); ++e) edge_weight[e] = edges_[e].weight;

    parent_.assign(n, kNoVertex);
    up_weight_.assign(n, W(0));
    depth_.assign(n, 0);
    depth_weight_.assign(n, W(0));
    if (n == 0) return;
    RootedTree rt = tree.rooted(0);
    for (Vertex v : rt.order) {
      if (v == rt.root) continue;
      Vertex p = rt.parent[v];
      parent_[v] = p;
      up_weight_[v] = edge_weight[rt.parent_half[v] / 2];
      depth_[v] = depth_[p] + 1;
      depth_weight_[v] = depth_weight_[p] + up_weight_[v];
    }
    if (n > kTableThreshold) build_lca_table(rt);
  }

  std::size_t size() const { return parent_.size(); }
  const std::vector<WeightedEdge<W>>& edges() const { return edges_; }

  W operator()(Vertex u, Vertex v) const {
    if (u == v) return W(0);
    if (euler_.empty()) return walk(u, v);
    return depth_weight_[u] + depth_weight_[v] - W(2) * depth_weight_[lca(u, v)];
  }

 private:
  W walk(Vertex u, Vertex v) const {
    W total(0);
    while (depth_[u] > depth_[v]) {
      total += up_weight_[u];
      u = parent_[u];
    }
    while (depth_[v] > depth_[u]) {
      total += up_weight_[v];
      v = parent_[v];
    }
    while (u != v) {
      total += up_weight_[u] + up_weight_[v];
      u = parent_[u];
      v = parent_[v];
    }
    return total;
  }

  void build_lca_table(const RootedTree& rt) {
    std::size_t n = size();
    first_.assign(n, 0);
    euler_.reserve(2 * n);
    // Iterative DFS emitting a vertex on entry and after each child.
    std::vector<std::pair<Vertex, std::size_t>> stack{{rt.root, 0}};
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next == 0) first_[v] = euler_.size();
      auto kids = rt.children(v);
      euler_.push_back(v);
      if (next < kids.size()) {
        Vertex c = kids[next++];
        stack.push_back({c, 0});
      } else {
        stack.pop_back();
      }
    }
    std::size_t m = euler_.size();
    std::size_t levels = std::bit_width(m);
    sparse_.assign(levels, std::vector<Vertex>(m));
    sparse_[0] = euler_;
    for (std::size_t k = 1; k < levels; ++k) {
      std::size_t span = std::size_t{1} << k;
      for (std::size_t i = 0; i + span <= m; ++i) {
        Vertex a = sparse_[k - 1][i];
        Vertex b = sparse_[k - 1][i + span / 2];
        sparse_[k][i] = depth_[a] <= depth_[b] ? a : b;
      }
    }
  }

  Vertex lca(Vertex u, Vertex v) const {
    std::size_t a = first_[u], b = first_[v];
    if (a > b) std::swap(a, b);
    std::size_t k = std::bit_width(b - a + 1) - 1;
    Vertex x = sparse_[k][a];
    Vertex y = sparse_[k][b + 1 - (std::size_t{1} << k)];
    return depth_[x] <= depth_[y] ? x : y;
  }

  std::vector<WeightedEdge<W>> edges_;
  std::vector<Vertex> parent_;
  std::vector<W> up_weight_;
  std::vector<std::size_t> depth_;
  std::vector<W> depth_weight_;
  std::vector<std::size_t> first_;
  std::vector<Vertex> euler_;
  std::vector<std::vector<Vertex>> sparse_;
};

enum class SourceKind { Matrix, Points, Tree };

/// Complete graph on vertices 0..n-1 with symmetric nonnegative weights,
/// given explicitly, by points under a norm, or induced by a weighted tree.
/// Immutable after construction; copies share the tree-metric tables.
template <WeightType W>
class MetricInstance {
 public:
  MetricInstance() = default;

  /// Full symmetric matrix, row-major n*n.
  static MetricInstance from_matrix(std::size_t n, std::vector<W> full) {
    if (full.size() != n * n) throw InvalidArgument("matrix must have n*n entries");
    for (std::size_t u = 0; u < n; ++u) {
      if (full[u * n + u] != W(0)) throw InvalidArgument("matrix diagonal must be zero");
      for (std::size_t v = u + 1; v < n; ++v) {
        if (full[u * n + v] != full[v * n + u]) throw InvalidArgument("matrix is not symmetric");
        if (full[u * n + v] < W(0)) throw InvalidArgument("negative weight in matrix");
      }
    }
    MetricInstance m;
    m.n_ = n;
    m.kind_ = SourceKind::Matrix;
    m.matrix_ = std::move(full);
    return m;
  }

  /// Upper triangle in row-major order: (0,1),(0,2),...,(0,n-1),(1,2),...
  static MetricInstance from_upper_triangle(std::size_t n, const std::vector<W>& upper) {
    if (upper.size() != n * (n - (n > 0 ? 1 : 0)) / 2) {
      throw InvalidArgument("upper triangle must have n(n-1)/2 entries");
    }
    std::vector<W> full(n * n, W(0));
    std::size_t k = 0;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) full[u * n + v] = full[v * n + u] = upper[k++];
    }
    return from_matrix(n, std::move(full));
  }

  static MetricInstance from_points(std::vector<Point> points, Norm norm)
    requires std::floating_point<W>
  {
    MetricInstance m;
    m.n_ = points.size();
    m.kind_ = SourceKind::Points;
    m.points_ = std::move(points);
    m.norm_ = norm;
    return m;
  }

  static MetricInstance from_tree(std::size_t n, std::vector<WeightedEdge<W>> edges) {
    MetricInstance m;
    m.n_ = n;
    m.kind_ = SourceKind::Tree;
    m.tree_ = std::make_shared<const TreePathMetric<W>>(n, std::move(edges));
    return m;
  }

  std::size_t size() const { return n_; }
  SourceKind kind() const { return kind_; }
  Norm norm() const { return norm_; }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<WeightedEdge<W>>& tree_edges() const {
    static const std::vector<WeightedEdge<W>> kEmpty;
    return tree_ ? tree_->edges() : kEmpty;
  }

  /// True when the triangle inequality holds by construction.
  bool metric_by_construction() const { return kind_ != SourceKind::Matrix; }

  W weight(Vertex u, Vertex v) const {
    if (u >= n_ || v >= n_) {
      throw InvalidArgument("vertex out of range in weight(" + std::to_string(u) + "," +
                            std::to_string(v) + "), n = " + std::to_string(n_));
    }
    return unchecked_weight(u, v);
  }

  W unchecked_weight(Vertex u, Vertex v) const {
    switch (kind_) {
      case SourceKind::Matrix: return matrix_[u * n_ + v];
      case SourceKind::Points:
        if constexpr (std::floating_point<W>) {
          return static_cast<W>(distance(points_[u], points_[v], norm_));
        }
        break;
      case SourceKind::Tree: return (*tree_)(u, v);
    }
    return W(0);
  }

  W operator()(Vertex u, Vertex v) const { return unchecked_weight(u, v); }

 private:
  std::size_t n_ = 0;
  SourceKind kind_ = SourceKind::Matrix;
  std::vector<W> matrix_;
  std::vector<Point> points_;
  Norm norm_ = Norm::L2;
  std::shared_ptr<const TreePathMetric<W>> tree_;
};

/// Instance whose weight(u, v) is the weight of the u~>v path in `tree`.
/// `base_weights` is aligned with tree.edges().
template <WeightType W>
MetricInstance<W> tree_induced_instance(const SpanningTree& tree, std::span<const W> base_weights) {
  auto edges = tree.edges();
  if (base_weights.size() != edges.size()) {
    throw InvalidArgument("need one base weight per tree edge");
  }
  std::vector<WeightedEdge<W>> weighted;
  weighted.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    weighted.push_back({edges[i].u, edges[i].v, base_weights[i]});
  }
  return MetricInstance<W>::from_tree(tree.vertex_count(), std::move(weighted));
}

template <WeightType W>
MetricInstance<W> unit_tree_instance(const SpanningTree& tree) {
  std::vector<W> ones(tree.edge_count(), W(1));
  return tree_induced_instance<W>(tree, ones);
}

template <WeightType W>
struct TriangleViolation {
  Vertex u = 0;
  Vertex x = 0;
  Vertex v = 0;
  W slack{};  // w(u,x) + w(x,v) - w(u,v), negative
};

/// All triples with w(u,v) > w(u,x) + w(x,v), reported once per unordered
/// pair {u,v} (u < v) and intermediate x. Floating weights get a relative
/// tolerance of 1e-12 so that rounded norms do not register.
template <WeightType W>
std::vector<TriangleViolation<W>> check_triangle(const MetricInstance<W>& instance) {
  std::vector<TriangleViolation<W>> out;
  std::size_t n = instance.size();
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      W direct = instance(u, v);
      for (Vertex x = 0; x < n; ++x) {
        if (x == u || x == v) continue;
        W slack = instance(u, x) + instance(x, v) - direct;
        bool bad;
        if constexpr (std::floating_point<W>) {
          bad = slack < -W(1e-12) * std::max(W(1), direct);
        } else {
          bad = slack < W(0);
        }
        if (bad) out.push_back({u, x, v, slack});
      }
    }
  }
  return out;
}

template <WeightType W>
W tree_weight(const SpanningTree& tree, const MetricInstance<W>& instance) {
  if (tree.vertex_count() != instance.size()) {
    throw InvalidArgument("tree and instance have different vertex counts");
  }
  W total(0);
  for (const Edge& e : tree.edges()) total += instance(e.u, e.v);
  return total;
}

}  // namespace adopt
