#pragma once

#include "adopt/bounds.hpp"
#include "adopt/metric.hpp"
#include "adopt/spanning_tree.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace adopt {

/// Which neighbour x of the donor v gets adopted.
enum class NeighborPolicy {
  // x minimizing w(u,x) - w(v,x), ties to the smallest id
  MinDelta,
  // first eligible neighbour in adjacency order
  FirstEligible,
};

template <WeightType W>
struct AdoptionStep {
  Vertex adopter = 0;  // u
  Vertex donor = 0;    // v
  Vertex adopted = 0;  // x, the former neighbour of v
  W delta{};           // realized weight change w(u,x) - w(v,x)
  friend bool operator==(const AdoptionStep&, const AdoptionStep&) = default;
};

template <WeightType W>
struct AdoptionSequence {
  std::vector<AdoptionStep<W>> steps;
  W nominal_cost{0};    // sum of w(u_i, v_i)
  W realized_delta{0};  // sum of step deltas, <= nominal_cost on metrics

  bool empty() const { return steps.empty(); }
  std::size_t size() const { return steps.size(); }

  std::vector<std::pair<Vertex, Vertex>> pairs() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(steps.size());
    for (const auto& s : steps) out.emplace_back(s.adopter, s.donor);
    return out;
  }
};

template <WeightType W>
struct AdoptOutcome {
  Vertex adopted = 0;
  W delta{};
};

/// The neighbour of v on the current v~>u path.
inline Vertex path_neighbor(const SpanningTree& tree, Vertex u, Vertex v) {
  // BFS from u until v is reached; v's BFS parent is the answer.
  std::size_t n = tree.vertex_count();
  std::vector<Vertex> parent(n, kNoVertex);
  std::vector<Vertex> queue{u};
  parent[u] = u;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    Vertex a = queue[i];
    if (a == v) return parent[v];
    tree.for_each_neighbor(a, [&](Vertex b) {
      if (parent[b] == kNoVertex) {
        parent[b] = a;
        queue.push_back(b);
      }
    });
  }
  throw InvalidArgument("vertices " + std::to_string(u) + " and " + std::to_string(v) +
                        " are not connected");
}

/// Adopt(u, v): u takes over a neighbour x of v other than the neighbour on
/// the u~>v path, replacing edge (v, x) by (u, x). deg(v) drops by one and
/// deg(u) grows by one.
template <WeightType W>
AdoptOutcome<W> adopt(SpanningTree& tree, Vertex u, Vertex v, const MetricInstance<W>& instance,
                      NeighborPolicy policy = NeighborPolicy::MinDelta) {
  std::size_t n = tree.vertex_count();
  if (u >= n || v >= n) throw InvalidArgument("adopt: vertex out of range");
  if (instance.size() != n) throw InvalidArgument("adopt: tree does not span the instance");
  if (u == v) throw PreconditionViolation("adopt: u and v must differ (" + std::to_string(u) + ")");
  if (tree.degree(v) < 2) {
    throw PreconditionViolation("adopt(" + std::to_string(u) + "," + std::to_string(v) +
                                "): donor has degree " + std::to_string(tree.degree(v)) +
                                ", needs at least 2");
  }
  Vertex blocked = path_neighbor(tree, u, v);
  std::size_t best_half = SpanningTree::kNil;
  Vertex best = kNoVertex;
  W best_delta{};
  for (std::size_t h = tree.first_half(v); h != SpanningTree::kNil; h = tree.next_half(h)) {
    Vertex x = tree.half_target(h);
    if (x == blocked) continue;
    if (policy == NeighborPolicy::FirstEligible) {
      best_half = h;
      best = x;
      best_delta = instance(u, x) - instance(v, x);
      break;
    }
    W d = instance(u, x) - instance(v, x);
    if (best == kNoVertex || d < best_delta || (d == best_delta && x < best)) {
      best_half = h;
      best = x;
      best_delta = d;
    }
  }
  if (best == kNoVertex) {
    throw PreconditionViolation("adopt(" + std::to_string(u) + "," + std::to_string(v) +
                                "): no eligible neighbour");
  }
  tree.move_half(best_half, u);
  return {best, best_delta};
}

template <WeightType W>
struct AdoptionResult {
  SpanningTree tree;
  AdoptionSequence<W> sequence;
  bool meets_bounds = false;
};

/// Executes `pairs` in order on a copy of `tree`. Throws
/// PreconditionViolation naming the first illegal step.
template <WeightType W>
AdoptionResult<W> apply_sequence(const SpanningTree& tree,
                                  std::span<const std::pair<Vertex, Vertex>> pairs,
                                  const MetricInstance<W>& instance, const DegreeBounds& bounds,
                                  NeighborPolicy policy = NeighborPolicy::MinDelta) {
  check_sizes(tree, bounds);
  AdoptionResult<W> result{tree, {}, false};
  result.sequence.steps.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [u, v] = pairs[i];
    AdoptOutcome<W> out;
    try {
      out = adopt(result.tree, u, v, instance, policy);
    } catch (const PreconditionViolation& e) {
      throw PreconditionViolation("step " + std::to_string(i) + " is illegal: " + e.what());
    }
    result.sequence.steps.push_back({u, v, out.adopted, out.delta});
    result.sequence.nominal_cost += instance(u, v);
    result.sequence.realized_delta += out.delta;
  }
  result.meets_bounds = meets_bounds(result.tree, bounds);
  return result;
}

/// Sum of w(u_i, v_i), recomputed from the instance.
template <WeightType W>
W sequence_cost(const AdoptionSequence<W>& seq, const MetricInstance<W>& instance) {
  W total(0);
  for (const auto& s : seq.steps) total += instance.weight(s.adopter, s.donor);
  return total;
}

/// Degree decrease of every vertex caused by the sequence.
template <WeightType W>
std::vector<std::int64_t> degree_decrease(const AdoptionSequence<W>& seq, std::size_t n) {
  std::vector<std::int64_t> dec(n, 0);
  for (const auto& s : seq.steps) {
    ++dec.at(s.donor);
    --dec.at(s.adopter);
  }
  return dec;
}

/// Feasible: every vertex sheds at least its deficit in the original tree.
template <WeightType W>
bool sequence_feasible(const AdoptionSequence<W>& seq, const SpanningTree& original,
                       const DegreeBounds& bounds) {
  auto dec = degree_decrease(seq, original.vertex_count());
  for (Vertex v = 0; v < dec.size(); ++v) {
    if (dec[v] < deficit(original, bounds, v)) return false;
  }
  return true;
}

/// One `ADOPT u v x delta` record per step.
template <WeightType W>
void write_trace(std::ostream& os, const AdoptionSequence<W>& seq) {
  for (const auto& s : seq.steps) {
    os << "ADOPT " << s.adopter << ' ' << s.donor << ' ' << s.adopted << ' '
       << format_weight(s.delta) << '\n';
  }
}

/// Reads (u, v) pairs back from a trace for replay; the recorded x and
/// delta are not needed to re-execute and are ignored.
inline std::vector<std::pair<Vertex, Vertex>> read_trace(std::istream& is) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    long long u = -1, v = -1;
    if (!(ls >> tag >> u >> v) || tag != "ADOPT" || u < 0 || v < 0) {
      throw ParseError("trace line " + std::to_string(line_no) + ": expected 'ADOPT u v x delta'");
    }
    pairs.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return pairs;
}

}  // namespace adopt
