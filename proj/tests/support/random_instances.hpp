#pragma once

#include "adopt/adopt.hpp"

#include <vector>

namespace testsupport {

using namespace adopt;

/// Tree-induced instance on a random tree: unit weights or integers 1..9.
struct TreeCase {
  SpanningTree tree;
  MetricInstance<Rational> instance;
};

inline TreeCase random_tree_case(std::size_t n, SplitMix64& rng, bool unit) {
  TreeCase c;
  c.tree = random_tree(n, rng);
  std::vector<Rational> w;
  for (std::size_t i = 0; i + 1 < n; ++i) w.push_back(unit ? Rational(1) : Rational(rng.between(1, 9)));
  c.instance = tree_induced_instance<Rational>(c.tree, w);
  return c;
}

/// Random d(v) >= 2 with sum >= 2(n-1); mostly tight, sometimes slack.
inline DegreeBounds random_bounds_at_least_two(const SpanningTree& tree, SplitMix64& rng) {
  std::size_t n = tree.vertex_count();
  for (;;) {
    std::vector<std::size_t> d(n);
    for (Vertex v = 0; v < n; ++v) {
      std::size_t hi = std::max<std::size_t>(2, tree.degree(v));
      d[v] = static_cast<std::size_t>(rng.between(2, static_cast<std::int64_t>(hi)));
    }
    DegreeBounds b(d);
    if (b.total() >= 2 * (n - 1)) return b;
  }
}

/// Random integer flow that is legal for `tree` (surplus <= deg - 1), built
/// one unit at a time.
inline AdoptionFlow random_legal_flow(const SpanningTree& tree, SplitMix64& rng, std::size_t units) {
  std::size_t n = tree.vertex_count();
  AdoptionFlow flow(n);
  for (std::size_t i = 0; i < units; ++i) {
    Vertex u = rng.below(n), v = rng.below(n);
    if (u == v) continue;
    if (flow.surplus(v) + 1 > static_cast<std::int64_t>(tree.degree(v)) - 1) continue;
    flow.add(u, v, 1);
  }
  return flow;
}

/// Loosest bounds the flow is feasible for, plus optional slack.
inline DegreeBounds bounds_served_by(const AdoptionFlow& flow, const SpanningTree& tree, SplitMix64& rng) {
  std::vector<std::size_t> d(tree.vertex_count());
  for (Vertex v = 0; v < d.size(); ++v) {
    std::int64_t x = static_cast<std::int64_t>(tree.degree(v)) - flow.surplus(v) + rng.between(0, 1);
    d[v] = static_cast<std::size_t>(std::max<std::int64_t>(1, x));
  }
  return DegreeBounds(d);
}

}  // namespace testsupport
