#pragma once

#include "adopt/spanning_tree.hpp"
#include "adopt/types.hpp"

#include <functional>
#include <queue>
#include <span>
#include <vector>

namespace adopt {

/// Labelled tree on n = seq.size() + 2 vertices; vertex v ends with degree
/// (occurrences of v in seq) + 1.
inline std::vector<Edge> prufer_decode(std::span<const Vertex> seq) {
  std::size_t n = seq.size() + 2;
  std::vector<std::size_t> degree(n, 1);
  for (Vertex v : seq) {
    if (v >= n) throw InvalidArgument("Pruefer symbol out of range");
    ++degree[v];
  }
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
  for (Vertex v = 0; v < n; ++v) {
    if (degree[v] == 1) leaves.push(v);
  }
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (Vertex v : seq) {
    Vertex leaf = leaves.top();
    leaves.pop();
    edges.push_back(Edge{leaf, v}.normalized());
    if (--degree[v] == 1) leaves.push(v);
  }
  Vertex a = leaves.top();
  leaves.pop();
  Vertex b = leaves.top();
  edges.push_back(Edge{a, b}.normalized());
  return edges;
}

inline std::vector<Vertex> prufer_encode(const SpanningTree& tree) {
  std::size_t n = tree.vertex_count();
  if (n < 2 || !tree.is_spanning_tree()) throw InvalidArgument("Pruefer encoding needs a spanning tree on n >= 2");
  std::vector<std::size_t> degree = tree.degrees();
  std::vector<char> removed(n, 0);
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
  for (Vertex v = 0; v < n; ++v) {
    if (degree[v] == 1) leaves.push(v);
  }
  std::vector<Vertex> seq;
  seq.reserve(n - 2);
  while (seq.size() + 2 < n) {
    Vertex leaf = leaves.top();
    leaves.pop();
    removed[leaf] = 1;
    tree.for_each_neighbor(leaf, [&](Vertex w) {
      if (removed[w]) return;
      seq.push_back(w);
      if (--degree[w] == 1) leaves.push(w);
    });
  }
  return seq;
}

}  // namespace adopt
