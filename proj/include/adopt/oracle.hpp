#pragma once

#include "adopt/bounds.hpp"
#include "adopt/metric.hpp"
#include "adopt/prufer.hpp"
#include "adopt/spanning_tree.hpp"

#include <limits>
#include <optional>
#include <vector>

namespace adopt {

template <WeightType W>
struct OracleTree {
  SpanningTree tree;
  W weight{0};
};

/// Minimum-weight spanning tree with degree(v) <= d(v), by enumerating the
/// Pruefer codes in which v occurs at most d(v) - 1 times. Ties go to the
/// lexicographically first code. 3 <= n <= 9.
template <WeightType W>
OracleTree<W> brute_dbst(const MetricInstance<W>& instance, const DegreeBounds& bounds) {
  std::size_t n = instance.size();
  if (n < 3 || n > 9) throw InvalidArgument("brute_dbst handles 3 <= n <= 9");
  if (bounds.size() != n) throw InvalidArgument("bounds size differs from instance size");
  std::vector<W> w(n * n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) w[u * n + v] = instance(u, v);
  }
  std::vector<std::size_t> left(n);
  for (Vertex v = 0; v < n; ++v) left[v] = bounds[v] - 1;

  std::vector<Vertex> seq(n - 2);
  std::optional<W> best;
  std::vector<Vertex> best_seq;
  auto visit = [&]() {
    auto edges = prufer_decode(seq);
    W total(0);
    for (const Edge& e : edges) total += w[e.u * n + e.v];
    if (!best || total < *best) {
      best = total;
      best_seq = seq;
    }
  };
  auto recurse = [&](auto&& self, std::size_t pos) -> void {
    if (pos == seq.size()) {
      visit();
      return;
    }
    for (Vertex v = 0; v < n; ++v) {
      if (left[v] == 0) continue;
      --left[v];
      seq[pos] = v;
      self(self, pos + 1);
      ++left[v];
    }
  };
  recurse(recurse, 0);
  if (!best) throw Infeasible("no spanning tree satisfies the degree bounds");
  auto edges = prufer_decode(best_seq);
  return {SpanningTree::from_edges(n, edges), *best};
}

template <WeightType W>
struct OraclePath {
  std::vector<Vertex> order;
  W weight{0};
};

/// Minimum-weight Hamiltonian path over all endpoint pairs, by subset
/// dynamic programming. 2 <= n <= 11.
template <WeightType W>
OraclePath<W> brute_hamilton_path(const MetricInstance<W>& instance) {
  std::size_t n = instance.size();
  if (n < 2 || n > 11) throw InvalidArgument("brute_hamilton_path handles 2 <= n <= 11");
  std::size_t full = std::size_t{1} << n;
  // best[mask * n + v]: cheapest path visiting exactly mask, ending at v.
  std::vector<std::optional<W>> best(full * n);
  std::vector<Vertex> from(full * n, kNoVertex);
  for (Vertex v = 0; v < n; ++v) best[(std::size_t{1} << v) * n + v] = W(0);
  for (std::size_t mask = 1; mask < full; ++mask) {
    for (Vertex v = 0; v < n; ++v) {
      const auto& cur = best[mask * n + v];
      if (!cur) continue;
      for (Vertex x = 0; x < n; ++x) {
        if (mask & (std::size_t{1} << x)) continue;
        std::size_t next = (mask | (std::size_t{1} << x)) * n + x;
        W cand = *cur + instance(v, x);
        if (!best[next] || cand < *best[next]) {
          best[next] = cand;
          from[next] = v;
        }
      }
    }
  }
  Vertex end = 0;
  for (Vertex v = 1; v < n; ++v) {
    if (*best[(full - 1) * n + v] < *best[(full - 1) * n + end]) end = v;
  }
  OraclePath<W> out;
  out.weight = *best[(full - 1) * n + end];
  std::size_t mask = full - 1;
  for (Vertex v = end; v != kNoVertex;) {
    out.order.push_back(v);
    Vertex prev = from[mask * n + v];
    mask &= ~(std::size_t{1} << v);
    v = prev;
  }
  return out;
}

}  // namespace adopt
