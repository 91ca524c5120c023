#pragma once

#include "adopt/spanning_tree.hpp"
#include "adopt/types.hpp"

#include <numeric>
#include <vector>

namespace adopt {

/// Per-vertex maximum degree d(v) >= 1.
class DegreeBounds {
 public:
  DegreeBounds() = default;
  explicit DegreeBounds(std::vector<std::size_t> bound) : bound_(std::move(bound)) {
    for (std::size_t v = 0; v < bound_.size(); ++v) {
      if (bound_[v] < 1) {
        throw InvalidArgument("degree bound of vertex " + std::to_string(v) + " is below 1");
      }
    }
  }

  static DegreeBounds uniform(std::size_t n, std::size_t d) {
    return DegreeBounds(std::vector<std::size_t>(n, d));
  }

  std::size_t size() const { return bound_.size(); }
  std::size_t operator[](Vertex v) const { return bound_[v]; }
  const std::vector<std::size_t>& values() const { return bound_; }

  std::size_t total() const { return std::accumulate(bound_.begin(), bound_.end(), std::size_t{0}); }

  bool all_at_least(std::size_t k) const {
    for (std::size_t d : bound_) {
      if (d < k) return false;
    }
    return true;
  }

  /// The bound-carrying heuristics need d(v) >= 2 everywhere.
  void require_at_least_two() const {
    for (std::size_t v = 0; v < bound_.size(); ++v) {
      if (bound_[v] < 2) {
        throw InvalidArgument("degree bound of vertex " + std::to_string(v) +
                              " is below 2; this algorithm needs d(v) >= 2");
      }
    }
  }

  /// A spanning tree on n vertices has total degree 2(n-1).
  void require_feasible_total() const {
    std::size_t n = bound_.size();
    if (n > 0 && total() < 2 * (n - 1)) {
      throw Infeasible("degree bounds sum to " + std::to_string(total()) +
                       " but a spanning tree needs " + std::to_string(2 * (n - 1)));
    }
  }

  friend bool operator==(const DegreeBounds&, const DegreeBounds&) = default;

 private:
  std::vector<std::size_t> bound_;
};

inline void check_sizes(const SpanningTree& tree, const DegreeBounds& bounds) {
  if (tree.vertex_count() != bounds.size()) {
    throw InvalidArgument("tree has " + std::to_string(tree.vertex_count()) +
                          " vertices but bounds cover " + std::to_string(bounds.size()));
  }
}

/// deg_T(v) - d(v), recomputed from the current tree.
inline std::int64_t deficit(const SpanningTree& tree, const DegreeBounds& bounds, Vertex v) {
  return static_cast<std::int64_t>(tree.degree(v)) - static_cast<std::int64_t>(bounds[v]);
}

inline std::vector<std::int64_t> deficits(const SpanningTree& tree, const DegreeBounds& bounds) {
  check_sizes(tree, bounds);
  std::vector<std::int64_t> out(tree.vertex_count());
  for (Vertex v = 0; v < out.size(); ++v) out[v] = deficit(tree, bounds, v);
  return out;
}

/// Vertices whose degree exceeds their bound.
inline std::vector<Vertex> bound_violations(const SpanningTree& tree, const DegreeBounds& bounds) {
  check_sizes(tree, bounds);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < tree.vertex_count(); ++v) {
    if (tree.degree(v) > bounds[v]) out.push_back(v);
  }
  return out;
}

inline bool meets_bounds(const SpanningTree& tree, const DegreeBounds& bounds) {
  return bound_violations(tree, bounds).empty();
}

}  // namespace adopt
