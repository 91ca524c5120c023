#pragma once

#include "adopt/adoption.hpp"
#include "adopt/bounds.hpp"
#include "adopt/flow.hpp"
#include "adopt/guarantee.hpp"
#include "adopt/metric.hpp"
#include "adopt/report.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace adopt {

/// Complete bidirected network on the tree's vertices: arc (u, v) costs
/// w(u, v) with unbounded capacity, vertex v demands its deficit and may
/// absorb at most deg_T(v) - 1 units.
template <WeightType W>
struct AdoptionNetwork {
  std::size_t n = 0;
  std::vector<W> cost;  // n*n, symmetric
  std::vector<std::int64_t> demand;
  std::vector<std::int64_t> surplus_cap;
  // Empty means every arc is present.
  std::vector<char> allowed;

  W arc_cost(Vertex u, Vertex v) const { return cost[u * n + v]; }
  bool has_arc(Vertex u, Vertex v) const { return u != v && (allowed.empty() || allowed[u * n + v]); }

  std::int64_t total_demand() const {
    std::int64_t t = 0;
    for (auto d : demand) t += std::max<std::int64_t>(0, d);
    return t;
  }
  std::int64_t total_supply() const {
    std::int64_t t = 0;
    for (auto d : demand) t += std::max<std::int64_t>(0, -d);
    return t;
  }
};

template <WeightType W>
AdoptionNetwork<W> build_network(const MetricInstance<W>& instance, const SpanningTree& tree,
                                 const DegreeBounds& bounds, bool restrict_arcs = false) {
  check_sizes(tree, bounds);
  if (instance.size() != tree.vertex_count()) throw InvalidArgument("tree does not span the instance");
  bounds.require_feasible_total();
  AdoptionNetwork<W> net;
  std::size_t n = net.n = tree.vertex_count();
  net.cost.resize(n * n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) net.cost[u * n + v] = instance(u, v);
  }
  net.demand = deficits(tree, bounds);
  net.surplus_cap.resize(n);
  for (Vertex v = 0; v < n; ++v) net.surplus_cap[v] = static_cast<std::int64_t>(tree.degree(v)) - 1;
  if (restrict_arcs) {
    net.allowed.assign(n * n, 0);
    for (Vertex u = 0; u < n; ++u) {
      if (tree.degree(u) != 1) continue;
      for (Vertex v = 0; v < n; ++v) {
        if (v != u && net.demand[v] > 0) net.allowed[u * n + v] = 1;
      }
    }
  }
  if (net.total_supply() < net.total_demand()) {
    throw Infeasible("adoption network: supply " + std::to_string(net.total_supply()) +
                     " cannot cover demand " + std::to_string(net.total_demand()));
  }
  return net;
}

namespace detail {

/// Successive shortest paths with vertex potentials. Each round runs a dense
/// Dijkstra on reduced costs, shifts the potentials, then saturates every
/// shortest path at once with blocking flows on the zero-reduced-cost arcs.
template <WeightType W>
class SuccessiveShortestPaths {
 public:
  explicit SuccessiveShortestPaths(std::size_t nodes, OpCounter* ops)
      : adj_(nodes), pot_(nodes, W(0)), ops_(ops) {}

  std::size_t add_arc(std::size_t from, std::size_t to, std::int64_t cap, W cost) {
    std::size_t id = to_.size();
    to_.push_back(to);
    cap_.push_back(cap);
    cost_.push_back(cost);
    to_.push_back(from);
    cap_.push_back(0);
    cost_.push_back(-cost);
    adj_[from].push_back(id);
    adj_[to].push_back(id + 1);
    return id;
  }

  std::int64_t residual(std::size_t arc) const { return cap_[arc]; }
  std::int64_t pushed(std::size_t arc) const { return cap_[arc ^ 1]; }

  /// Sends up to `amount` units from s to t; returns the amount sent.
  std::int64_t run(std::size_t s, std::size_t t, std::int64_t amount) {
    W scale(1);
    for (const W& c : cost_) scale = std::max(scale, c);
    if constexpr (std::floating_point<W>) eps_ = W(1e-9) * scale;
    std::int64_t sent = 0;
    while (sent < amount) {
      if (!dijkstra(s, t)) break;
      level_.assign(adj_.size(), -1);
      while (sent < amount && bfs_levels(s, t)) {
        cursor_.assign(adj_.size(), 0);
        while (sent < amount) {
          std::int64_t f = augment(s, t, amount - sent);
          if (f == 0) break;
          sent += f;
        }
      }
    }
    return sent;
  }

 private:
  W reduced(std::size_t arc, std::size_t from) const { return cost_[arc] + pot_[from] - pot_[to_[arc]]; }

  bool admissible(std::size_t arc, std::size_t from) const {
    if (cap_[arc] <= 0) return false;
    if constexpr (std::floating_point<W>) {
      return reduced(arc, from) <= eps_;
    } else {
      return reduced(arc, from) == W(0);
    }
  }

  bool dijkstra(std::size_t s, std::size_t t) {
    std::size_t nodes = adj_.size();
    std::vector<W> dist(nodes, W(0));
    std::vector<char> reached(nodes, 0), done(nodes, 0);
    reached[s] = 1;
    for (std::size_t iter = 0; iter < nodes; ++iter) {
      std::size_t v = nodes;
      for (std::size_t x = 0; x < nodes; ++x) {
        if (reached[x] && !done[x] && (v == nodes || dist[x] < dist[v])) v = x;
      }
      tick(ops_, nodes);
      if (v == nodes) break;
      done[v] = 1;
      for (std::size_t arc : adj_[v]) {
        if (cap_[arc] <= 0) continue;
        std::size_t w = to_[arc];
        if (done[w]) continue;
        W rc = reduced(arc, v);
        if constexpr (std::floating_point<W>) rc = std::max(rc, W(0));
        W nd = dist[v] + rc;
        if (!reached[w] || nd < dist[w]) {
          reached[w] = 1;
          dist[w] = nd;
        }
      }
      tick(ops_, adj_[v].size());
    }
    if (!reached[t]) return false;
    for (std::size_t v = 0; v < nodes; ++v) {
      pot_[v] += reached[v] ? std::min(dist[v], dist[t]) : dist[t];
    }
    return true;
  }

  bool bfs_levels(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::vector<std::size_t> queue{s};
    level_[s] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      std::size_t v = queue[i];
      for (std::size_t arc : adj_[v]) {
        std::size_t w = to_[arc];
        if (level_[w] < 0 && admissible(arc, v)) {
          level_[w] = level_[v] + 1;
          queue.push_back(w);
        }
      }
      tick(ops_, adj_[v].size());
    }
    return level_[t] >= 0;
  }

  std::int64_t augment(std::size_t v, std::size_t t, std::int64_t limit) {
    if (v == t) return limit;
    for (std::size_t& i = cursor_[v]; i < adj_[v].size(); ++i) {
      std::size_t arc = adj_[v][i];
      std::size_t w = to_[arc];
      if (level_[w] != level_[v] + 1 || !admissible(arc, v)) continue;
      std::int64_t f = augment(w, t, std::min(limit, cap_[arc]));
      if (f > 0) {
        cap_[arc] -= f;
        cap_[arc ^ 1] += f;
        return f;
      }
    }
    return 0;
  }

  std::vector<std::size_t> to_;
  std::vector<std::int64_t> cap_;
  std::vector<W> cost_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<W> pot_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
  W eps_{0};
  OpCounter* ops_;
};

}  // namespace detail

/// Integer minimum-cost legal feasible flow of the adoption network, with
/// directed cycles cancelled so that the positive arcs form a DAG.
///
/// Encoding: every vertex v is split into an entry node v' and an exit
/// node v. Real arcs run u -> v' with cost w(u, v); v' -> v has capacity
/// surplus_cap(v), which caps what v can absorb. A super-source feeds each
/// vertex with negative demand up to -demand(v); each vertex with positive
/// demand drains exactly demand(v) into a super-sink.
template <WeightType W>
AdoptionFlow min_cost_flow(const AdoptionNetwork<W>& net, OpCounter* ops = nullptr) {
  std::size_t n = net.n;
  std::int64_t need = net.total_demand();
  AdoptionFlow flow(n);
  if (need == 0) return flow;
  std::int64_t unbounded = net.total_supply() + 1;
  std::size_t source = 2 * n, sink = 2 * n + 1;
  detail::SuccessiveShortestPaths<W> ssp(2 * n + 2, ops);
  std::vector<std::pair<std::size_t, std::pair<Vertex, Vertex>>> real_arcs;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (!net.has_arc(u, v)) continue;
      real_arcs.push_back({ssp.add_arc(u, n + v, unbounded, net.arc_cost(u, v)), {u, v}});
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (net.surplus_cap[v] > 0) ssp.add_arc(n + v, v, net.surplus_cap[v], W(0));
    if (net.demand[v] < 0) ssp.add_arc(source, v, -net.demand[v], W(0));
    if (net.demand[v] > 0) ssp.add_arc(v, sink, net.demand[v], W(0));
  }
  std::int64_t sent = ssp.run(source, sink, need);
  if (sent < need) {
    throw Infeasible("no legal feasible adoption flow: routed " + std::to_string(sent) + " of " +
                     std::to_string(need) + " units");
  }
  for (const auto& [arc, uv] : real_arcs) {
    if (std::int64_t f = ssp.pushed(arc); f > 0) flow.add(uv.first, uv.second, f);
  }
  cancel_cycles(flow);
  return flow;
}

namespace detail {

template <WeightType W>
void check_metric(const MetricInstance<W>& instance, MetricCheck mode, std::vector<std::string>& warnings) {
  if (mode == MetricCheck::Off || instance.metric_by_construction()) return;
  auto violations = check_triangle(instance);
  if (violations.empty()) return;
  const auto& t = violations.front();
  std::string msg = "instance violates the triangle inequality at (" + std::to_string(t.u) + "," +
                    std::to_string(t.x) + "," + std::to_string(t.v) + ") by " +
                    format_weight(-t.slack) + " (" + std::to_string(violations.size()) +
                    " violations); the weight guarantee does not apply";
  if (mode == MetricCheck::Error) throw InvalidArgument(msg);
  warnings.push_back(std::move(msg));
}

template <WeightType W>
void finish_report(SolveReport<W>& report, const SpanningTree& input, const SpanningTree& output,
                   const MetricInstance<W>& instance, const DegreeBounds& bounds) {
  report.input_weight = tree_weight(input, instance);
  report.output_weight = tree_weight(output, instance);
  report.ratio = weight_ratio(report.output_weight, report.input_weight);
  report.meets_bounds = meets_bounds(output, bounds);
  if (bounds.all_at_least(2)) {
    report.c = uniform_flow_constant(input, bounds);
    report.bound = Rational(1) + *report.c;
  }
}

}  // namespace detail

/// Optimal adoption sequence via a minimum-cost flow, executed on a copy of
/// `tree`. The output meets the bounds; on tree-induced metrics its weight
/// is optimal among all bounded-degree spanning trees.
template <WeightType W>
SolveResult<W> solve_optimal(const MetricInstance<W>& instance, const SpanningTree& tree,
                             const DegreeBounds& bounds, const SolveOptions& options = {}) {
  check_sizes(tree, bounds);
  bounds.require_feasible_total();
  SolveResult<W> result;
  result.report.algorithm = "flow";
  detail::check_metric(instance, options.metric_check, result.report.warnings);
  auto network = build_network(instance, tree, bounds, options.restrict_arcs);
  result.flow = min_cost_flow(network, options.ops);
  result.report.flow_cost = flow_cost(result.flow, instance);
  auto executed = flow_to_sequence(result.flow, tree, instance, bounds, options.policy);
  result.tree = std::move(executed.tree);
  result.sequence = std::move(executed.sequence);
  result.report.realized_delta = result.sequence.realized_delta;
  detail::finish_report(result.report, tree, result.tree, instance, bounds);
  return result;
}

}  // namespace adopt
