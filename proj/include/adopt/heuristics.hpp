#pragma once

#include "adopt/adoption.hpp"
#include "adopt/bounds.hpp"
#include "adopt/flow.hpp"
#include "adopt/guarantee.hpp"
#include "adopt/mincost_flow.hpp"
#include "adopt/report.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace adopt {

/// c units on every child -> parent edge of the tree rooted at `root`.
struct UniformFlow {
  Rational c{0};
  RootedTree rooted;

  template <WeightType W>
  W cost(const SpanningTree& tree, const MetricInstance<W>& instance) const {
    return W(c.numerator()) * tree_weight(tree, instance) / W(c.denominator());
  }

  /// Surplus at v, in the same units as c: c * (children - 1), or
  /// c * children at the root.
  Rational surplus(Vertex v) const {
    auto kids = static_cast<std::int64_t>(rooted.children(v).size());
    return c * (v == rooted.root ? kids : kids - 1);
  }
};

inline UniformFlow uniform_flow(const SpanningTree& tree, const DegreeBounds& bounds, Vertex root = 0) {
  return {uniform_flow_constant(tree, bounds), tree.rooted(root)};
}

/// A flow path replaced by the single arc source -> target; `via` is the
/// child of target on the original path.
struct ShortcutEdge {
  Vertex source = 0;
  Vertex target = 0;
  Vertex via = 0;
  friend bool operator==(const ShortcutEdge&, const ShortcutEdge&) = default;
};

/// Shortcuts a flow living on child -> parent tree edges, where
/// carries[v] says whether the edge from v to its parent carries flow.
/// Paths are split into maximal paths deterministically: at every vertex,
/// the path of its smallest-id flow child continues upward (if the vertex
/// forwards flow) and every other incoming path ends there.
inline std::vector<ShortcutEdge> shortcut_tree_flow(const RootedTree& rt, const std::vector<char>& carries,
                                                    OpCounter* ops = nullptr) {
  std::size_t n = rt.size();
  std::vector<Vertex> origin(n, kNoVertex);
  std::vector<ShortcutEdge> out;
  for (auto it = rt.order.rbegin(); it != rt.order.rend(); ++it) {
    Vertex v = *it;
    bool forwards = v != rt.root && carries[v];
    Vertex cont = kNoVertex;
    if (forwards) {
      for (Vertex u : rt.children(v)) {
        if (carries[u] && (cont == kNoVertex || u < cont)) cont = u;
      }
      origin[v] = cont == kNoVertex ? v : origin[cont];
    }
    for (Vertex u : rt.children(v)) {
      tick(ops);
      if (carries[u] && u != cont) out.push_back({origin[u], v, u});
    }
  }
  return out;
}

/// Shortcut of the uniform flow: every non-root edge carries c.
inline std::vector<ShortcutEdge> shortcut_uniform(const RootedTree& rt, OpCounter* ops = nullptr) {
  std::vector<char> carries(rt.size(), 1);
  if (rt.size() > 0) carries[rt.root] = 0;
  return shortcut_tree_flow(rt, carries, ops);
}

namespace detail {

/// Net arc count per vertex (in minus out) of a set of shortcut edges.
inline std::vector<std::int64_t> shortcut_surplus(std::size_t n, const std::vector<ShortcutEdge>& edges) {
  std::vector<std::int64_t> s(n, 0);
  for (const auto& e : edges) {
    ++s[e.target];
    --s[e.source];
  }
  return s;
}

/// One unit per shortcut edge in `units` (source adopts a child of target).
/// The adopted child is the live right sibling, cyclically, of the child
/// subtree that currently holds the source; a union-find over each vertex's
/// children tracks which subtrees have been merged by earlier adoptions.
template <WeightType W>
AdoptionSequence<W> execute_units(SpanningTree& tree, const RootedTree& rt, std::vector<ShortcutEdge> units,
                                  const MetricInstance<W>& instance, OpCounter* ops) {
  std::size_t n = rt.size();
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[rt.order[i]] = i;
  // Deepest targets first.
  std::stable_sort(units.begin(), units.end(), [&](const ShortcutEdge& a, const ShortcutEdge& b) {
    return rank[a.target] > rank[b.target];
  });
  std::vector<Vertex> next_sib(n, kNoVertex), prev_sib(n, kNoVertex), first_child(n, kNoVertex);
  for (Vertex v = 0; v < n; ++v) {
    auto kids = rt.children(v);
    if (kids.empty()) continue;
    first_child[v] = kids.front();
    for (std::size_t i = 0; i + 1 < kids.size(); ++i) {
      next_sib[kids[i]] = kids[i + 1];
      prev_sib[kids[i + 1]] = kids[i];
    }
  }
  std::vector<Vertex> group(n);
  for (Vertex v = 0; v < n; ++v) group[v] = v;
  auto find = [&](Vertex x) {
    while (group[x] != x) {
      group[x] = group[group[x]];
      x = group[x];
      tick(ops);
    }
    return x;
  };

  AdoptionSequence<W> seq;
  seq.steps.reserve(units.size());
  for (const auto& unit : units) {
    Vertex t = unit.target;
    Vertex holder = find(unit.via);
    Vertex x = next_sib[holder] != kNoVertex ? next_sib[holder] : first_child[t];
    if (x == holder || x == kNoVertex) {
      throw std::logic_error("adoption execution: vertex " + std::to_string(t) + " has no child left to give");
    }
    tree.move_half(rt.parent_half[x], unit.source);
    // Unlink x from t's live children; its subtree now hangs below holder.
    if (prev_sib[x] != kNoVertex) next_sib[prev_sib[x]] = next_sib[x];
    if (next_sib[x] != kNoVertex) prev_sib[next_sib[x]] = prev_sib[x];
    if (first_child[t] == x) first_child[t] = next_sib[x];
    group[x] = holder;
    W delta = instance(unit.source, x) - instance(t, x);
    seq.steps.push_back({unit.source, t, x, delta});
    seq.nominal_cost += instance(unit.source, t);
    seq.realized_delta += delta;
    tick(ops, 4);
  }
  return seq;
}

template <WeightType W>
struct LinearSetup {
  std::vector<std::int64_t> deficit;
  RootedTree rooted;
};

template <WeightType W>
LinearSetup<W> linear_setup(const MetricInstance<W>& instance, const SpanningTree& tree, const DegreeBounds& bounds,
                            const SolveOptions& options, std::vector<std::string>& warnings) {
  check_sizes(tree, bounds);
  if (instance.size() != tree.vertex_count()) throw InvalidArgument("tree does not span the instance");
  bounds.require_at_least_two();
  check_metric(instance, options.metric_check, warnings);
  if (options.root >= tree.vertex_count()) throw InvalidArgument("root out of range");
  return {deficits(tree, bounds), tree.rooted(options.root)};
}

}  // namespace detail

/// Algorithm 1: shortcut the uniform flow into leaf -> interior arcs, then
/// give each vertex with deficit D one unit from each of its D cheapest
/// incoming arcs (linear-time selection), and perform those adoptions.
template <WeightType W>
SolveResult<W> algorithm1(const MetricInstance<W>& instance, const SpanningTree& tree, const DegreeBounds& bounds,
                          const SolveOptions& options = {}) {
  SolveResult<W> result;
  result.report.algorithm = "greedy";
  auto setup = detail::linear_setup(instance, tree, bounds, options, result.report.warnings);
  const RootedTree& rt = setup.rooted;
  std::size_t n = rt.size();
  OpCounter* ops = options.ops;

  auto shortcuts = shortcut_uniform(rt, ops);
  // Surplus of the shortcut flow must match the uniform flow vertex by vertex.
  auto surplus = detail::shortcut_surplus(n, shortcuts);
  for (Vertex v = 0; v < n; ++v) {
    auto kids = static_cast<std::int64_t>(rt.children(v).size());
    if (surplus[v] != (v == rt.root ? kids : kids - 1)) {
      throw std::logic_error("shortcutting changed the surplus at vertex " + std::to_string(v));
    }
  }

  // Bucket incoming arcs by target.
  std::vector<std::size_t> offset(n + 1, 0);
  for (const auto& e : shortcuts) ++offset[e.target + 1];
  for (Vertex v = 0; v < n; ++v) offset[v + 1] += offset[v];
  std::vector<std::tuple<W, Vertex, std::size_t>> bucket(shortcuts.size());
  {
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (std::size_t i = 0; i < shortcuts.size(); ++i) {
      const auto& e = shortcuts[i];
      bucket[fill[e.target]++] = {instance(e.source, e.target), e.source, i};
      tick(ops);
    }
  }
  std::vector<ShortcutEdge> units;
  result.flow = AdoptionFlow(n);
  for (Vertex v = 0; v < n; ++v) {
    std::int64_t d = setup.deficit[v];
    if (d <= 0) continue;
    auto first = bucket.begin() + static_cast<std::ptrdiff_t>(offset[v]);
    auto last = bucket.begin() + static_cast<std::ptrdiff_t>(offset[v + 1]);
    if (last - first < d) {
      throw std::logic_error("vertex " + std::to_string(v) + " has fewer incoming shortcut arcs than its deficit");
    }
    auto nth = first + d;
    std::nth_element(first, nth - 1, last, [ops](const auto& a, const auto& b) {
      tick(ops);
      return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });
    for (auto it = first; it != nth; ++it) {
      const auto& e = shortcuts[std::get<2>(*it)];
      units.push_back(e);
      result.flow.add(e.source, e.target, 1);
      result.report.flow_cost += std::get<0>(*it);
    }
  }
  result.tree = tree;
  result.sequence = detail::execute_units(result.tree, rt, std::move(units), instance, ops);
  result.report.realized_delta = result.sequence.realized_delta;
  detail::finish_report(result.report, tree, result.tree, instance, bounds);
  return result;
}

/// Costs of the tree dynamic program over the restricted network (tree
/// edges directed to the root, capacity 1). c0[v] / c1[v]: cheapest flow in
/// v's subtree leaving v with surplus exactly demand or demand + 1;
/// delta[u] = w(u, parent) + c1[u] - c0[u].
template <WeightType W>
struct DPTable {
  std::vector<W> c0;
  std::vector<W> c1;
  std::vector<W> delta;
  // Children of each vertex permuted so that the cheapest (by delta, then
  // id) come first; the first max(0, D + j) are selected for state j.
  std::vector<std::size_t> child_offset;
  std::vector<Vertex> ranked_children;
};

template <WeightType W>
DPTable<W> tree_dp(const MetricInstance<W>& instance, const RootedTree& rt, const std::vector<std::int64_t>& deficit,
                   OpCounter* ops = nullptr) {
  std::size_t n = rt.size();
  DPTable<W> dp;
  dp.c0.assign(n, W(0));
  dp.c1.assign(n, W(0));
  dp.delta.assign(n, W(0));
  dp.child_offset = rt.child_offset;
  dp.ranked_children = rt.child_list;
  for (auto it = rt.order.rbegin(); it != rt.order.rend(); ++it) {
    Vertex v = *it;
    auto first = dp.ranked_children.begin() + static_cast<std::ptrdiff_t>(dp.child_offset[v]);
    auto last = dp.ranked_children.begin() + static_cast<std::ptrdiff_t>(dp.child_offset[v + 1]);
    auto kids = static_cast<std::int64_t>(last - first);
    W base(0);
    for (auto c = first; c != last; ++c) {
      base += dp.c0[*c];
      tick(ops);
    }
    std::int64_t take0 = std::max<std::int64_t>(0, deficit[v]);
    std::int64_t take1 = v == rt.root ? take0 : std::max<std::int64_t>(0, deficit[v] + 1);
    if (take1 > kids) {
      throw std::logic_error("tree DP: vertex " + std::to_string(v) + " needs more inflow than it has children");
    }
    if (take1 > 0) {
      auto by_delta = [&](Vertex a, Vertex b) {
        tick(ops);
        return std::tie(dp.delta[a], a) < std::tie(dp.delta[b], b);
      };
      std::nth_element(first, first + (take1 - 1), last, by_delta);
      // The first take1 are now the cheapest, the last of them the largest.
      if (take0 < take1 && take1 > 1) {
        std::nth_element(first, first + (take1 - 1), first + take1, by_delta);
      }
    }
    W sum0(0), sum1(0);
    for (std::int64_t i = 0; i < take1; ++i) {
      W d = dp.delta[*(first + i)];
      if (i < take0) sum0 += d;
      sum1 += d;
    }
    dp.c0[v] = base + sum0;
    dp.c1[v] = base + sum1;
    if (v != rt.root) dp.delta[v] = instance(v, rt.parent[v]) + dp.c1[v] - dp.c0[v];
  }
  return dp;
}

/// Algorithm 2: an optimal integral flow in the restricted network by the
/// tree DP, recovered top-down, shortcut, and executed like Algorithm 1.
template <WeightType W>
SolveResult<W> algorithm2(const MetricInstance<W>& instance, const SpanningTree& tree, const DegreeBounds& bounds,
                          const SolveOptions& options = {}) {
  SolveResult<W> result;
  result.report.algorithm = "treedp";
  auto setup = detail::linear_setup(instance, tree, bounds, options, result.report.warnings);
  const RootedTree& rt = setup.rooted;
  std::size_t n = rt.size();
  OpCounter* ops = options.ops;

  auto dp = tree_dp(instance, rt, setup.deficit, ops);
  result.report.flow_cost = n == 0 ? W(0) : dp.c0[rt.root];

  // carries[u]: the edge u -> parent(u) carries one unit.
  std::vector<char> carries(n, 0);
  for (Vertex v : rt.order) {
    std::int64_t state = v != rt.root && carries[v] ? 1 : 0;
    std::int64_t take = std::max<std::int64_t>(0, setup.deficit[v] + state);
    auto first = dp.ranked_children.begin() + static_cast<std::ptrdiff_t>(dp.child_offset[v]);
    for (std::int64_t i = 0; i < take; ++i) carries[*(first + i)] = 1;
    tick(ops);
  }
  auto shortcuts = shortcut_tree_flow(rt, carries, ops);
  auto surplus = detail::shortcut_surplus(n, shortcuts);
  for (Vertex v = 0; v < n; ++v) {
    std::int64_t in = 0;
    for (Vertex u : rt.children(v)) in += carries[u];
    std::int64_t out = v != rt.root && carries[v] ? 1 : 0;
    if (surplus[v] != in - out) {
      throw std::logic_error("shortcutting changed the surplus at vertex " + std::to_string(v));
    }
  }
  result.flow = AdoptionFlow(n);
  for (const auto& e : shortcuts) result.flow.add(e.source, e.target, 1);
  result.tree = tree;
  result.sequence = detail::execute_units(result.tree, rt, std::move(shortcuts), instance, ops);
  result.report.realized_delta = result.sequence.realized_delta;
  detail::finish_report(result.report, tree, result.tree, instance, bounds);
  return result;
}

}  // namespace adopt
