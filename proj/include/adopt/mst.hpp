#pragma once

#include "adopt/metric.hpp"
#include "adopt/spanning_tree.hpp"

#include <boost/polygon/voronoi.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <tuple>
#include <vector>

namespace adopt {

namespace detail {

template <WeightType W>
struct CandidateEdge {
  W weight;
  Vertex u;
  Vertex v;
  friend bool operator<(const CandidateEdge& a, const CandidateEdge& b) {
    return std::tie(a.weight, a.u, a.v) < std::tie(b.weight, b.u, b.v);
  }
};

/// Kruskal over a candidate edge set; ties go to the lexicographically
/// smaller (u, v) pair.
template <WeightType W>
SpanningTree kruskal(std::size_t n, std::vector<CandidateEdge<W>> edges) {
  for (auto& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  std::vector<Vertex> dsu(n);
  std::iota(dsu.begin(), dsu.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
    return x;
  };
  SpanningTree tree(n);
  for (const auto& e : edges) {
    if (tree.edge_count() + 1 == n) break;
    Vertex a = find(e.u), b = find(e.v);
    if (a == b) continue;
    dsu[a] = b;
    tree.add_edge(e.u, e.v);
  }
  if (n > 0 && tree.edge_count() + 1 != n) {
    throw Error("candidate graph is disconnected");
  }
  return tree;
}

/// Dense Prim; ties go to the smaller attaching vertex id.
template <WeightType W>
SpanningTree prim(const MetricInstance<W>& instance) {
  std::size_t n = instance.size();
  SpanningTree tree(n);
  if (n == 0) return tree;
  std::vector<char> in_tree(n, 0);
  std::vector<W> key(n);
  std::vector<Vertex> link(n, 0);
  in_tree[0] = 1;
  for (Vertex v = 1; v < n; ++v) key[v] = instance(0, v);
  for (std::size_t added = 1; added < n; ++added) {
    Vertex best = kNoVertex;
    for (Vertex v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      if (best == kNoVertex || key[v] < key[best]) best = v;
    }
    in_tree[best] = 1;
    tree.add_edge(link[best], best);
    for (Vertex v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      W w = instance(best, v);
      if (w < key[v]) {
        key[v] = w;
        link[v] = best;
      }
    }
  }
  return tree;
}

struct IntPoint {
  std::int64_t x;
  std::int64_t y;
};

/// Candidate pairs containing an L1 minimum spanning tree: for every point,
/// its nearest neighbour in each of the eight octants (sweep-line form).
inline std::vector<std::pair<Vertex, Vertex>> manhattan_candidates(std::vector<IntPoint> ps) {
  std::vector<Vertex> id(ps.size());
  std::iota(id.begin(), id.end(), Vertex{0});
  std::vector<std::pair<Vertex, Vertex>> out;
  for (int pass = 0; pass < 4; ++pass) {
    std::sort(id.begin(), id.end(), [&](Vertex i, Vertex j) {
      std::int64_t si = ps[i].x + ps[i].y, sj = ps[j].x + ps[j].y;
      return si != sj ? si < sj : i < j;
    });
    std::map<std::int64_t, Vertex> sweep;
    for (Vertex i : id) {
      for (auto it = sweep.lower_bound(-ps[i].y); it != sweep.end(); sweep.erase(it++)) {
        Vertex j = it->second;
        std::int64_t dx = ps[i].x - ps[j].x;
        std::int64_t dy = ps[i].y - ps[j].y;
        if (dy > dx) break;
        out.emplace_back(i, j);
      }
      sweep[-ps[i].y] = i;
    }
    for (auto& p : ps) {
      if (pass & 1) {
        p.x = -p.x;
      } else {
        std::swap(p.x, p.y);
      }
    }
  }
  return out;
}

/// Delaunay edges (the dual of the Voronoi diagram) of distinct integer
/// points; they contain a Euclidean minimum spanning tree.
inline std::vector<std::pair<Vertex, Vertex>> delaunay_candidates(const std::vector<IntPoint>& ps) {
  namespace bp = boost::polygon;
  std::vector<bp::point_data<int>> sites;
  sites.reserve(ps.size());
  for (const auto& p : ps) sites.emplace_back(static_cast<int>(p.x), static_cast<int>(p.y));
  bp::voronoi_diagram<double> vd;
  bp::construct_voronoi(sites.begin(), sites.end(), &vd);
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(vd.edges().size() / 2);
  for (const auto& edge : vd.edges()) {
    if (!edge.is_primary()) continue;
    Vertex a = edge.cell()->source_index();
    Vertex b = edge.twin()->cell()->source_index();
    if (a < b) out.emplace_back(a, b);
  }
  return out;
}

template <WeightType W>
bool integral_points(const MetricInstance<W>& instance) {
  constexpr double kLimit = 1 << 29;
  for (const Point& p : instance.points()) {
    if (p.x != std::floor(p.x) || p.y != std::floor(p.y)) return false;
    if (std::abs(p.x) > kLimit || std::abs(p.y) > kLimit) return false;
  }
  return true;
}

template <WeightType W>
SpanningTree geometric_mst(const MetricInstance<W>& instance) {
  const auto& pts = instance.points();
  std::size_t n = pts.size();
  // Collapse duplicate points onto one representative.
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return std::tie(pts[a], a) < std::tie(pts[b], b);
  });
  std::vector<Vertex> rep_of_unique;
  std::vector<CandidateEdge<W>> candidates;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && pts[order[i]] == pts[order[i - 1]]) {
      candidates.push_back({W(0), rep_of_unique.back(), order[i]});
      continue;
    }
    rep_of_unique.push_back(order[i]);
  }
  std::vector<IntPoint> unique;
  unique.reserve(rep_of_unique.size());
  for (Vertex v : rep_of_unique) {
    const Point& p = pts[v];
    auto x = static_cast<std::int64_t>(p.x), y = static_cast<std::int64_t>(p.y);
    if (instance.norm() == Norm::Linf) {
      unique.push_back({x + y, x - y});
    } else {
      unique.push_back({x, y});
    }
  }
  auto pairs = instance.norm() == Norm::L2 ? delaunay_candidates(unique) : manhattan_candidates(unique);
  candidates.reserve(candidates.size() + pairs.size());
  for (auto [a, b] : pairs) {
    Vertex u = rep_of_unique[a], v = rep_of_unique[b];
    candidates.push_back({instance(u, v), u, v});
  }
  return kruskal(n, std::move(candidates));
}

}  // namespace detail

/// Minimum spanning tree of the complete graph. Up to kDenseKruskalLimit
/// vertices, Kruskal over all pairs with ties broken towards the
/// lexicographically smaller (u, v). Larger point instances with integer
/// coordinates use a geometric candidate graph (Delaunay for L2, octant
/// neighbours for L1/Linf); anything else falls back to dense Prim.
inline constexpr std::size_t kDenseKruskalLimit = 2500;

template <WeightType W>
SpanningTree mst(const MetricInstance<W>& instance) {
  std::size_t n = instance.size();
  if (n == 0) throw InvalidArgument("mst of an empty instance");
  if (n <= kDenseKruskalLimit) {
    std::vector<detail::CandidateEdge<W>> all;
    all.reserve(n * (n - 1) / 2);
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) all.push_back({instance(u, v), u, v});
    }
    return detail::kruskal(n, std::move(all));
  }
  if (instance.kind() == SourceKind::Points && detail::integral_points(instance)) {
    return detail::geometric_mst(instance);
  }
  return detail::prim(instance);
}

}  // namespace adopt
