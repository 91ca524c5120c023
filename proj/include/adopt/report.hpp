#pragma once

#include "adopt/adoption.hpp"
#include "adopt/flow.hpp"
#include "adopt/spanning_tree.hpp"
#include "adopt/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace adopt {

/// What to do when a matrix instance fails the triangle inequality.
enum class MetricCheck { Off, Warn, Error };

struct SolveOptions {
  NeighborPolicy policy = NeighborPolicy::MinDelta;
  MetricCheck metric_check = MetricCheck::Warn;
  // Linear-time algorithms root the tree here.
  Vertex root = 0;
  // Restrict the adoption network to (leaf, deficit vertex) arcs.
  bool restrict_arcs = false;
  OpCounter* ops = nullptr;
};

template <WeightType W>
struct SolveReport {
  std::string algorithm;  // "flow", "greedy" or "treedp"
  W input_weight{0};
  W output_weight{0};
  W flow_cost{0};
  W realized_delta{0};
  // Uniform-flow constant and guarantee; present only when every d(v) >= 2.
  std::optional<Rational> c;
  std::optional<Rational> bound;
  W ratio{1};
  bool meets_bounds = false;
  std::vector<std::string> warnings;
};

template <WeightType W>
struct SolveResult {
  SpanningTree tree;
  AdoptionSequence<W> sequence;
  AdoptionFlow flow;
  SolveReport<W> report;
};

}  // namespace adopt
