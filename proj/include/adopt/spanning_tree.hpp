#pragma once

#include "adopt/types.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace adopt {

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge normalized() const { return u < v ? Edge{u, v} : Edge{v, u}; }
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Structural problems of an edge list read as a spanning tree over
/// vertices 0..n-1. Empty iff the edges form a spanning tree.
inline std::vector<std::string> tree_problems(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::string> problems;
  auto edge_name = [](const Edge& e) {
    return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
  };
  std::vector<Vertex> dsu(n);
  std::iota(dsu.begin(), dsu.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
    return x;
  };
  std::size_t components = n;
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      problems.push_back("edge " + edge_name(e) + " has a vertex outside 0.." +
                         std::to_string(n == 0 ? 0 : n - 1));
      continue;
    }
    if (e.u == e.v) {
      problems.push_back("self-loop at vertex " + std::to_string(e.u));
      continue;
    }
    Vertex a = find(e.u), b = find(e.v);
    if (a == b) {
      problems.push_back("edge " + edge_name(e) + " closes a cycle");
      continue;
    }
    dsu[a] = b;
    --components;
  }
  if (n > 0 && edges.size() != n - 1) {
    problems.push_back("expected " + std::to_string(n - 1) + " edges, found " +
                       std::to_string(edges.size()));
  }
  if (components > 1) {
    problems.push_back("graph has " + std::to_string(components) + " connected components");
  }
  return problems;
}

/// A rooted snapshot of a tree: parent pointers, BFS order and children in
/// adjacency order. Invalidated by any mutation of the source tree.
struct RootedTree {
  Vertex root = 0;
  std::vector<Vertex> parent;
  // Half-edge owned by parent[v] that points at v (see SpanningTree).
  std::vector<std::size_t> parent_half;
  std::vector<Vertex> order;
  std::vector<std::size_t> child_offset;
  std::vector<Vertex> child_list;

  std::size_t size() const { return parent.size(); }
  std::span<const Vertex> children(Vertex v) const {
    return {child_list.data() + child_offset[v], child_offset[v + 1] - child_offset[v]};
  }
  bool is_leaf(Vertex v) const { return v != root && children(v).empty(); }
};

/// Undirected tree over dense vertex ids. Each vertex keeps a doubly linked
/// list of half-edges, so an edge endpoint can be moved to another vertex in
/// constant time given its half-edge id. Half-edges 2e and 2e+1 form edge e;
/// half-edge h is owned by the vertex at the far end of its twin.
class SpanningTree {
 public:
  static constexpr std::size_t kNil = std::numeric_limits<std::size_t>::max();

  SpanningTree() = default;
  explicit SpanningTree(std::size_t n) : head_(n, kNil), tail_(n, kNil), degree_(n, 0) {}

  /// Builds a tree and checks it spans 0..n-1; throws InvalidArgument with
  /// the first structural problem otherwise.
  static SpanningTree from_edges(std::size_t n, std::span<const Edge> edges) {
    if (auto problems = tree_problems(n, edges); !problems.empty()) {
      throw InvalidArgument("not a spanning tree: " + problems.front());
    }
    SpanningTree tree(n);
    for (const Edge& e : edges) tree.add_edge(e.u, e.v);
    return tree;
  }

  std::size_t vertex_count() const { return degree_.size(); }
  std::size_t edge_count() const { return to_.size() / 2; }
  std::size_t degree(Vertex v) const { return degree_.at(v); }
  const std::vector<std::size_t>& degrees() const { return degree_; }

  std::optional<Vertex> root() const { return root_; }
  void set_root(std::optional<Vertex> r) {
    if (r && *r >= vertex_count()) throw InvalidArgument("root out of range");
    root_ = r;
  }

  void add_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw InvalidArgument("self-loop at vertex " + std::to_string(u));
    std::size_t h = to_.size();
    to_.push_back(v);
    to_.push_back(u);
    next_.resize(h + 2, kNil);
    prev_.resize(h + 2, kNil);
    link(u, h);
    link(v, h + 1);
  }

  // Half-edge navigation.
  std::size_t first_half(Vertex v) const { return head_[v]; }
  std::size_t next_half(std::size_t h) const { return next_[h]; }
  Vertex half_target(std::size_t h) const { return to_[h]; }
  Vertex half_owner(std::size_t h) const { return to_[h ^ 1]; }

  template <class F>
  void for_each_neighbor(Vertex v, F&& f) const {
    for (std::size_t h = head_[v]; h != kNil; h = next_[h]) f(to_[h]);
  }

  std::vector<Vertex> neighbors(Vertex v) const {
    check_vertex(v);
    std::vector<Vertex> out;
    out.reserve(degree_[v]);
    for_each_neighbor(v, [&](Vertex x) { out.push_back(x); });
    return out;
  }

  std::size_t find_half(Vertex v, Vertex x) const {
    for (std::size_t h = head_[v]; h != kNil; h = next_[h]) {
      if (to_[h] == x) return h;
    }
    return kNil;
  }

  bool has_edge(Vertex u, Vertex v) const {
    return u < vertex_count() && v < vertex_count() && find_half(u, v) != kNil;
  }

  /// Moves the endpoint owned by half_owner(h) to vertex u: the edge
  /// (owner, target) becomes (u, target). Constant time.
  void move_half(std::size_t h, Vertex u) {
    check_vertex(u);
    Vertex owner = half_owner(h);
    Vertex target = to_[h];
    if (u == target) throw InvalidArgument("move_half would create a self-loop");
    unlink(owner, h);
    to_[h ^ 1] = u;
    link(u, h);
  }

  /// Replaces edge (v, x) by (u, x).
  void replace_edge(Vertex v, Vertex x, Vertex u) {
    std::size_t h = find_half(v, x);
    if (h == kNil) {
      throw InvalidArgument("no edge (" + std::to_string(v) + "," + std::to_string(x) + ")");
    }
    move_half(h, u);
  }

  /// Edges as normalized (min, max) pairs in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (std::size_t e = 0; e < edge_count(); ++e) {
      out.push_back(Edge{to_[2 * e + 1], to_[2 * e]}.normalized());
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool is_spanning_tree() const {
    std::size_t n = vertex_count();
    if (n == 0) return true;
    if (edge_count() != n - 1) return false;
    std::size_t seen = 0;
    std::vector<char> mark(n, 0);
    std::vector<Vertex> stack{0};
    mark[0] = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      ++seen;
      for_each_neighbor(v, [&](Vertex x) {
        if (!mark[x]) {
          mark[x] = 1;
          stack.push_back(x);
        }
      });
    }
    return seen == n;
  }

  RootedTree rooted(Vertex r) const {
    check_vertex(r);
    std::size_t n = vertex_count();
    RootedTree rt;
    rt.root = r;
    rt.parent.assign(n, kNoVertex);
    rt.parent_half.assign(n, kNil);
    rt.order.reserve(n);
    std::vector<char> mark(n, 0);
    mark[r] = 1;
    rt.order.push_back(r);
    for (std::size_t i = 0; i < rt.order.size(); ++i) {
      Vertex v = rt.order[i];
      for (std::size_t h = head_[v]; h != kNil; h = next_[h]) {
        Vertex x = to_[h];
        if (mark[x]) continue;
        mark[x] = 1;
        rt.parent[x] = v;
        rt.parent_half[x] = h;
        rt.order.push_back(x);
      }
    }
    if (rt.order.size() != n) throw InvalidArgument("tree is not connected");
    rt.child_offset.assign(n + 1, 0);
    for (Vertex v = 0; v < n; ++v) {
      if (v != r) ++rt.child_offset[rt.parent[v] + 1];
    }
    for (Vertex v = 0; v < n; ++v) rt.child_offset[v + 1] += rt.child_offset[v];
    rt.child_list.assign(n == 0 ? 0 : n - 1, kNoVertex);
    std::vector<std::size_t> fill(rt.child_offset.begin(), rt.child_offset.end() - 1);
    // Adjacency order of the parent, which is the order the BFS met them.
    for (Vertex v : rt.order) {
      if (v != r) rt.child_list[fill[rt.parent[v]]++] = v;
    }
    return rt;
  }

  friend bool operator==(const SpanningTree& a, const SpanningTree& b) {
    return a.vertex_count() == b.vertex_count() && a.edges() == b.edges();
  }

 private:
  void check_vertex(Vertex v) const {
    if (v >= vertex_count()) {
      throw InvalidArgument("vertex " + std::to_string(v) + " out of range (n = " +
                            std::to_string(vertex_count()) + ")");
    }
  }

  void link(Vertex v, std::size_t h) {
    prev_[h] = tail_[v];
    next_[h] = kNil;
    if (tail_[v] == kNil) {
      head_[v] = h;
    } else {
      next_[tail_[v]] = h;
    }
    tail_[v] = h;
    ++degree_[v];
  }

  void unlink(Vertex v, std::size_t h) {
    if (prev_[h] == kNil) {
      head_[v] = next_[h];
    } else {
      next_[prev_[h]] = next_[h];
    }
    if (next_[h] == kNil) {
      tail_[v] = prev_[h];
    } else {
      prev_[next_[h]] = prev_[h];
    }
    --degree_[v];
  }

  std::vector<Vertex> to_;
  std::vector<std::size_t> next_;
  std::vector<std::size_t> prev_;
  std::vector<std::size_t> head_;
  std::vector<std::size_t> tail_;
  std::vector<std::size_t> degree_;
  std::optional<Vertex> root_;
};

}  // namespace adopt
