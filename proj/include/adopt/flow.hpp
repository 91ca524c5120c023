#pragma once

#include "adopt/adoption.hpp"
#include "adopt/bounds.hpp"
#include "adopt/metric.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <queue>
#include <vector>

namespace adopt {

/// Integer adoption flow. Stored as nonnegative amounts on directed arcs
/// (u, v), "u adopts f(u,v) neighbours of v"; net(u, v) = f(u,v) - f(v,u)
/// is the skew-symmetric view. Keeping both directions lets a sequence map
/// to a flow with its cost preserved exactly, including opposite adoptions
/// that a netted flow would hide.
class AdoptionFlow {
 public:
  using ArcMap = std::map<std::pair<Vertex, Vertex>, std::int64_t>;

  AdoptionFlow() = default;
  explicit AdoptionFlow(std::size_t n) : inflow_(n, 0), outflow_(n, 0) {}

  std::size_t vertex_count() const { return inflow_.size(); }

  void add(Vertex u, Vertex v, std::int64_t amount) {
    if (u >= vertex_count() || v >= vertex_count()) throw InvalidArgument("flow arc out of range");
    if (u == v) throw InvalidArgument("flow arc must join distinct vertices");
    if (amount < 0) throw InvalidArgument("flow amounts are nonnegative; use subtract");
    if (amount == 0) return;
    arcs_[{u, v}] += amount;
    outflow_[u] += amount;
    inflow_[v] += amount;
  }

  void subtract(Vertex u, Vertex v, std::int64_t amount) {
    auto it = arcs_.find({u, v});
    if (it == arcs_.end() || it->second < amount) throw InvalidArgument("subtracting more than the arc carries");
    it->second -= amount;
    if (it->second == 0) arcs_.erase(it);
    outflow_[u] -= amount;
    inflow_[v] -= amount;
  }

  std::int64_t amount(Vertex u, Vertex v) const {
    auto it = arcs_.find({u, v});
    return it == arcs_.end() ? 0 : it->second;
  }

  std::int64_t net(Vertex u, Vertex v) const { return amount(u, v) - amount(v, u); }

  /// Inflow minus outflow; equals the degree decrease the flow causes.
  std::int64_t surplus(Vertex v) const { return inflow_[v] - outflow_[v]; }

  const ArcMap& arcs() const { return arcs_; }
  bool is_zero() const { return arcs_.empty(); }

  friend bool operator==(const AdoptionFlow&, const AdoptionFlow&) = default;

 private:
  ArcMap arcs_;
  std::vector<std::int64_t> inflow_;
  std::vector<std::int64_t> outflow_;
};

template <WeightType W>
W flow_cost(const AdoptionFlow& flow, const MetricInstance<W>& instance) {
  W total(0);
  for (const auto& [arc, f] : flow.arcs()) total += W(f) * instance(arc.first, arc.second);
  return total;
}

/// First vertex whose surplus exceeds deg_T(v) - 1, if any.
inline std::optional<Vertex> first_illegal_vertex(const AdoptionFlow& flow, const SpanningTree& tree) {
  for (Vertex v = 0; v < flow.vertex_count(); ++v) {
    if (flow.surplus(v) > static_cast<std::int64_t>(tree.degree(v)) - 1) return v;
  }
  return std::nullopt;
}

/// First vertex whose surplus falls short of its deficit, if any.
inline std::optional<Vertex> first_infeasible_vertex(const AdoptionFlow& flow, const SpanningTree& tree,
                                                     const DegreeBounds& bounds) {
  for (Vertex v = 0; v < flow.vertex_count(); ++v) {
    if (flow.surplus(v) < deficit(tree, bounds, v)) return v;
  }
  return std::nullopt;
}

namespace detail {

/// Any directed cycle among positive arcs, as a vertex list v0..vk (arcs
/// v_i -> v_{i+1} and vk -> v0); empty if the arc set is acyclic.
inline std::vector<Vertex> find_flow_cycle(const AdoptionFlow& flow) {
  std::size_t n = flow.vertex_count();
  std::vector<std::vector<Vertex>> out(n);
  for (const auto& [arc, f] : flow.arcs()) out[arc.first].push_back(arc.second);
  std::vector<char> state(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<Vertex> path;
  std::vector<std::size_t> cursor(n, 0);
  for (Vertex s = 0; s < n; ++s) {
    if (state[s] != 0 || out[s].empty()) continue;
    path.assign(1, s);
    state[s] = 1;
    while (!path.empty()) {
      Vertex v = path.back();
      if (cursor[v] < out[v].size()) {
        Vertex w = out[v][cursor[v]++];
        if (state[w] == 1) {
          auto it = std::find(path.begin(), path.end(), w);
          return {it, path.end()};
        }
        if (state[w] == 0) {
          state[w] = 1;
          path.push_back(w);
        }
      } else {
        state[v] = 2;
        path.pop_back();
      }
    }
  }
  return {};
}

}  // namespace detail

inline bool is_acyclic(const AdoptionFlow& flow) { return detail::find_flow_cycle(flow).empty(); }

/// Repeatedly removes the bottleneck amount around a directed cycle of
/// positive arcs until none remains. Surpluses are unchanged and, with
/// nonnegative weights, the cost does not increase.
inline void cancel_cycles(AdoptionFlow& flow) {
  for (;;) {
    auto cycle = detail::find_flow_cycle(flow);
    if (cycle.empty()) return;
    std::int64_t bottleneck = std::numeric_limits<std::int64_t>::max();
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      bottleneck = std::min(bottleneck, flow.amount(cycle[i], cycle[(i + 1) % cycle.size()]));
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      flow.subtract(cycle[i], cycle[(i + 1) % cycle.size()], bottleneck);
    }
  }
}

/// f(u,v) = number of times u adopts a neighbour of v.
template <WeightType W>
AdoptionFlow sequence_to_flow(const AdoptionSequence<W>& seq, std::size_t n) {
  AdoptionFlow flow(n);
  for (const auto& s : seq.steps) flow.add(s.adopter, s.donor, 1);
  return flow;
}

/// Adoption pairs for an acyclic flow: vertices in topological order of the
/// positive arcs (smallest id first among ready vertices), then scanned in
/// reverse, each u adopting f(u,v) neighbours of v. Every vertex has all
/// its outgoing arcs processed before any incoming one.
inline std::vector<std::pair<Vertex, Vertex>> flow_to_pairs(const AdoptionFlow& flow) {
  std::size_t n = flow.vertex_count();
  std::vector<std::vector<std::pair<Vertex, std::int64_t>>> out(n);
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& [arc, f] : flow.arcs()) {
    out[arc.first].push_back({arc.second, f});
    ++indegree[arc.second];
  }
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
  for (Vertex v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<Vertex> topo;
  topo.reserve(n);
  while (!ready.empty()) {
    Vertex v = ready.top();
    ready.pop();
    topo.push_back(v);
    for (auto [w, f] : out[v]) {
      if (--indegree[w] == 0) ready.push(w);
    }
  }
  if (topo.size() != n) throw PreconditionViolation("flow_to_pairs needs an acyclic flow");
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    for (auto [w, f] : out[*it]) {
      for (std::int64_t k = 0; k < f; ++k) pairs.emplace_back(*it, w);
    }
  }
  return pairs;
}

/// Turns a legal feasible integer flow into a legal feasible adoption
/// sequence (executed on a copy of `tree`) whose nominal cost is at most
/// the flow cost.
template <WeightType W>
AdoptionResult<W> flow_to_sequence(AdoptionFlow flow, const SpanningTree& tree,
                                   const MetricInstance<W>& instance, const DegreeBounds& bounds,
                                   NeighborPolicy policy = NeighborPolicy::MinDelta) {
  check_sizes(tree, bounds);
  if (flow.vertex_count() != tree.vertex_count()) throw InvalidArgument("flow and tree sizes differ");
  if (auto v = first_illegal_vertex(flow, tree)) {
    throw PreconditionViolation("flow is not legal at vertex " + std::to_string(*v) + ": surplus " +
                                std::to_string(flow.surplus(*v)) + " exceeds degree - 1 = " +
                                std::to_string(tree.degree(*v) - 1));
  }
  if (auto v = first_infeasible_vertex(flow, tree, bounds)) {
    throw PreconditionViolation("flow is not feasible at vertex " + std::to_string(*v) + ": surplus " +
                                std::to_string(flow.surplus(*v)) + " below deficit " +
                                std::to_string(deficit(tree, bounds, *v)));
  }
  cancel_cycles(flow);
  auto pairs = flow_to_pairs(flow);
  return apply_sequence(tree, std::span<const std::pair<Vertex, Vertex>>(pairs), instance, bounds, policy);
}

/// One `FLOW u v f(u,v) cost` record per positive arc.
template <WeightType W>
void write_flow_dump(std::ostream& os, const AdoptionFlow& flow, const MetricInstance<W>& instance) {
  for (const auto& [arc, f] : flow.arcs()) {
    os << "FLOW " << arc.first << ' ' << arc.second << ' ' << f << ' '
       << format_weight(W(f) * instance(arc.first, arc.second)) << '\n';
  }
}

}  // namespace adopt
