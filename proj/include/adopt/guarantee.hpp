#pragma once

#include "adopt/bounds.hpp"
#include "adopt/spanning_tree.hpp"
#include "adopt/types.hpp"

#include <algorithm>

namespace adopt {

/// c = 1 - min{(d(v)-2)/(deg_T(v)-2) : deg_T(v) > 2}, clamped to [0, 1].
/// With no vertex of degree above 2 the minimum is taken as 1, so c = 0.
inline Rational uniform_flow_constant(const SpanningTree& tree, const DegreeBounds& bounds) {
  check_sizes(tree, bounds);
  bounds.require_at_least_two();
  Rational min_term(1);
  for (Vertex v = 0; v < tree.vertex_count(); ++v) {
    std::size_t deg = tree.degree(v);
    if (deg <= 2) continue;
    Rational term(static_cast<std::int64_t>(bounds[v]) - 2, static_cast<std::int64_t>(deg) - 2);
    min_term = std::min(min_term, term);
  }
  return std::clamp(Rational(1) - min_term, Rational(0), Rational(1));
}

/// Weight guarantee of every adoption algorithm here: the output tree weighs
/// at most this factor times the input tree, 2 - min{...} = 1 + c.
inline Rational performance_bound(const SpanningTree& tree, const DegreeBounds& bounds) {
  return Rational(1) + uniform_flow_constant(tree, bounds);
}

}  // namespace adopt
