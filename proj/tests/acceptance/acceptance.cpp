// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. `acceptance N` runs criterion N only.

#include "adopt/adopt.hpp"
#include "../support/random_instances.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>

using namespace adopt;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

template <WeightType W>
SolveResult<W> run_named(const std::string& name, const MetricInstance<W>& inst, const SpanningTree& tree,
                         const DegreeBounds& bounds, SolveOptions options = {}) {
  options.metric_check = MetricCheck::Off;
  if (name == "flow") return solve_optimal(inst, tree, bounds, options);
  if (name == "greedy") return algorithm1(inst, tree, bounds, options);
  return algorithm2(inst, tree, bounds, options);
}

const char* const kAlgorithms[] = {"flow", "greedy", "treedp"};

// 1. Optimal adoptions match exhaustive search on tree-induced metrics.
Outcome criterion1() {
  Outcome o;
  auto start = Clock::now();
  SplitMix64 rng(1001);
  int checked = 0;
  for (; checked < 600 && o.pass; ++checked) {
    std::size_t n = 4 + rng.below(5);
    auto tc = testsupport::random_tree_case(n, rng, checked % 2 == 0);
    auto bounds = testsupport::random_bounds_at_least_two(tc.tree, rng);
    auto solved = solve_optimal(tc.instance, tc.tree, bounds);
    auto best = brute_dbst(tc.instance, bounds);
    if (!solved.report.meets_bounds) o.fail("instance " + std::to_string(checked) + ": bounds not met");
    if (solved.report.output_weight != best.weight) {
      o.fail("instance " + std::to_string(checked) + ": solver " + format_weight(solved.report.output_weight) +
             " vs optimum " + format_weight(best.weight));
    }
  }
  double t = seconds_since(start);
  if (t >= 60) o.fail("took " + std::to_string(t) + " s");
  if (o.pass) o.detail = std::to_string(checked) + " instances, exact equality, " + std::to_string(t) + " s";
  return o;
}

// 2. Every algorithm stays within 1 + c of the input tree on point sets.
Outcome criterion2() {
  Outcome o;
  SplitMix64 rng(2002);
  int checked = 0, repaired = 0;
  double worst = 0;
  for (; checked < 510 && o.pass; ++checked) {
    Norm norm = static_cast<Norm>(checked % 3);
    std::size_t n = 2 + rng.below(199);
    auto inst = gen_random(n, norm, rng());
    auto tree = mst(inst);
    auto bounds = testsupport::random_bounds_at_least_two(tree, rng);
    double bound = to_double(performance_bound(tree, bounds));
    if (!meets_bounds(tree, bounds)) ++repaired;
    for (const char* alg : kAlgorithms) {
      auto r = run_named(alg, inst, tree, bounds);
      double limit = bound * r.report.input_weight;
      if (!r.report.meets_bounds) o.fail(std::string(alg) + ": bounds not met");
      if (r.report.output_weight > limit * (1 + 1e-9)) {
        o.fail(std::string(alg) + " on instance " + std::to_string(checked) + ": ratio " +
               std::to_string(r.report.ratio) + " > bound " + std::to_string(bound));
      }
      if (r.report.input_weight > 0) worst = std::max(worst, r.report.ratio / bound);
    }
  }
  if (o.pass) {
    o.detail = std::to_string(checked) + " instances (" + std::to_string(repaired) + " violating) x 3 algorithms, max ratio/bound " + std::to_string(worst);
  }
  return o;
}

// 3. Optimal ratio on the k-ary family lies between the finite-k lower
// bound and 3/2.
Outcome criterion3() {
  Outcome o;
  if (kary_lower_bound(4, 3, 2) != Rational(5, 4)) o.fail("lower bound at k=2 is not 5/4");
  if (kary_lower_bound(4, 3, 3) != Rational(1) + Rational(15, 39)) o.fail("lower bound at k=3 is not 1+15/39");
  std::ostringstream ratios;
  Rational prev(0);
  for (std::size_t k = 2; k <= 6; ++k) {
    auto fam = gen_kary(4, k);
    auto bounds = DegreeBounds::uniform(fam.tree.vertex_count(), 3);
    auto r = solve_optimal(fam.instance, fam.tree, bounds);
    Rational lb = kary_lower_bound(4, 3, k);
    if (!r.report.meets_bounds) o.fail("k=" + std::to_string(k) + ": bounds not met");
    if (r.report.ratio < lb || r.report.ratio > Rational(3, 2)) {
      o.fail("k=" + std::to_string(k) + ": ratio " + format_weight(r.report.ratio) + " outside [" +
             format_weight(lb) + ", 3/2]");
    }
    if (r.report.ratio < prev) o.fail("ratio decreased at k=" + std::to_string(k));
    prev = r.report.ratio;
    ratios << (k > 2 ? ", " : "") << "k=" << k << ": " << format_weight(r.report.ratio);
  }
  if (o.pass) o.detail = ratios.str();
  return o;
}

// 4. Degree-3 and degree-4 trees from minimum spanning trees.
Outcome criterion4() {
  Outcome o;
  struct Family {
    Norm norm;
    std::size_t max_mst_degree;
    std::vector<std::pair<std::size_t, Rational>> targets;  // (d, strict ratio bound)
  };
  std::vector<Family> families{
      {Norm::L1, 4, {{3, Rational(3, 2)}}},
      {Norm::L2, 5, {{3, Rational(5, 3)}, {4, Rational(4, 3)}}},
  };
  SplitMix64 rng(4004);
  std::ostringstream summary;
  for (const auto& fam : families) {
    int used = 0, skipped = 0;
    double worst = 0;
    while (used < 110 && o.pass) {
      std::size_t n = 3 + rng.below(98);
      auto inst = gen_random(n, fam.norm, rng());
      auto tree = mst(inst);
      std::size_t maxdeg = *std::max_element(tree.degrees().begin(), tree.degrees().end());
      if (maxdeg > fam.max_mst_degree) {
        ++skipped;
        continue;
      }
      ++used;
      for (auto [d, limit] : fam.targets) {
        auto bounds = DegreeBounds::uniform(n, d);
        for (const char* alg : kAlgorithms) {
          auto r = run_named(alg, inst, tree, bounds);
          if (!r.report.meets_bounds) o.fail(std::string(alg) + ": bounds not met");
          if (!(r.report.ratio < to_double(limit))) {
            o.fail(std::string(norm_name(fam.norm)) + " d=" + std::to_string(d) + " " + alg + ": ratio " +
                   std::to_string(r.report.ratio) + " not below " + format_weight(limit));
          }
          worst = std::max(worst, r.report.ratio / to_double(limit));
        }
      }
    }
    summary << norm_name(fam.norm) << ": " << used << " used, " << skipped << " skipped, max ratio/limit "
            << worst << "; ";
  }
  if (o.pass) o.detail = summary.str();
  return o;
}

// 5. Path family: the only feasible trees weigh at least n/2 times w(T).
Outcome criterion5() {
  Outcome o;
  std::ostringstream summary;
  for (std::size_t edges = 2; edges <= 7; ++edges) {
    auto fam = gen_path(edges);
    auto best = brute_dbst(fam.instance, fam.bounds);
    Rational need = Rational(static_cast<std::int64_t>(edges), 2) * tree_weight(fam.tree, fam.instance);
    if (best.weight < need) {
      o.fail("edges=" + std::to_string(edges) + ": optimum " + format_weight(best.weight) + " < " +
             format_weight(need));
    }
    summary << (edges > 2 ? ", " : "") << format_weight(best.weight) << ">=" << format_weight(need);
  }
  if (o.pass) o.detail = summary.str();
  return o;
}

// 6. Layered point sets: witness tree, spanning tree and formula checks.
Outcome criterion6() {
  Outcome o;
  std::ostringstream summary;
  Rational prev(-1);
  for (auto [n, k] : {std::pair<std::int64_t, std::int64_t>{8, 4}, {10, 5}, {12, 6}}) {
    auto set = gen_t2(n, k);
    auto inst = set.instance();
    auto b = t2_bounds(n, k);
    double witness = tree_weight(t2_witness_tree(set), inst);
    double exact_upper = static_cast<double>((k + 3) * checked_pow(n, k));
    if (b.tree_upper != (k + 3) * checked_pow(n, k)) o.fail("tree_upper formula");
    // Witness edges are axis-parallel integers: the double sum is exact.
    if (witness > exact_upper) o.fail("witness weight above (k+3)n^k at n=" + std::to_string(n));
    double spanning = tree_weight(mst(inst), inst);
    if (spanning > witness * (1 + 1e-9)) o.fail("mst heavier than the witness at n=" + std::to_string(n));
    if (b.ratio_floor != Rational(2 * (k - 2), k + 3)) o.fail("ratio floor formula");
    if (Rational(b.path_lower, b.tree_upper) != b.ratio_floor) o.fail("path_lower/tree_upper mismatch");
    if (b.ratio_floor <= prev) o.fail("ratio floor not increasing at k=" + std::to_string(k));
    prev = b.ratio_floor;
    summary << "(" << n << "," << k << ") " << set.size() << " pts witness " << witness << " mst " << spanning
            << " floor " << format_weight(b.ratio_floor) << "; ";
  }
  for (auto [n, k, level] : {std::tuple<std::int64_t, std::int64_t, int>{4, 2, 1}}) {
    auto set = gen_t2_truncated(n, k, level);
    if (set.size() > 11) {
      o.fail("truncated set too large");
      continue;
    }
    double path = brute_hamilton_path(set.instance()).weight;
    std::int64_t bound = t2_circle_bound(set);
    if (path < static_cast<double>(bound)) o.fail("Hamilton path below the disc bound");
    summary << "truncated(" << n << "," << k << ",<=" << level << ") " << set.size() << " pts path " << path
            << " >= " << bound << "; ";
  }
  if (o.pass) o.detail = summary.str();
  return o;
}

// 7. Flows and sequences convert into each other without losing cost.
Outcome criterion7() {
  Outcome o;
  SplitMix64 rng(7007);
  int flows = 0, sequences = 0;
  for (; flows < 1000 && o.pass; ++flows) {
    std::size_t n = 2 + rng.below(29);
    auto tc = testsupport::random_tree_case(n, rng, flows % 2 == 0);
    auto flow = testsupport::random_legal_flow(tc.tree, rng, rng.below(3 * n + 1));
    auto bounds = testsupport::bounds_served_by(flow, tc.tree, rng);
    try {
      auto r = flow_to_sequence(flow, tc.tree, tc.instance, bounds);
      if (!r.meets_bounds || !sequence_feasible(r.sequence, tc.tree, bounds)) o.fail("result not feasible");
      if (r.sequence.nominal_cost > flow_cost(flow, tc.instance)) o.fail("sequence costs more than the flow");
    } catch (const PreconditionViolation& e) {
      o.fail(std::string("illegal step: ") + e.what());
    }
  }
  for (; sequences < 1000 && o.pass; ++sequences) {
    std::size_t n = 2 + rng.below(29);
    auto tc = testsupport::random_tree_case(n, rng, sequences % 2 == 0);
    std::vector<std::pair<Vertex, Vertex>> pairs;
    SpanningTree t = tc.tree;
    std::size_t steps = rng.below(2 * n + 1);
    for (std::size_t i = 0; i < steps; ++i) {
      Vertex u = rng.below(n), v = rng.below(n);
      if (u == v || t.degree(v) < 2) continue;
      adopt::adopt(t, u, v, tc.instance);
      pairs.emplace_back(u, v);
    }
    auto r = apply_sequence<Rational>(tc.tree, pairs, tc.instance, DegreeBounds::uniform(n, n));
    auto flow = sequence_to_flow(r.sequence, n);
    if (flow_cost(flow, tc.instance) != sequence_cost(r.sequence, tc.instance)) o.fail("cost not preserved");
  }
  if (o.pass) o.detail = std::to_string(flows) + " flows, " + std::to_string(sequences) + " sequences";
  return o;
}

// 8. Linear-time algorithms on the k-ary family near 10^4, 3*10^4, 10^5.
Outcome criterion8() {
  Outcome o;
  std::ostringstream summary;
  for (const char* alg : {"greedy", "treedp"}) {
    std::vector<double> sizes, counts;
    for (std::size_t k : {8u, 9u, 10u}) {
      auto fam = gen_kary(4, k);
      std::size_t n = fam.tree.vertex_count();
      auto bounds = DegreeBounds::uniform(n, 3);
      OpCounter ops;
      SolveOptions options;
      options.ops = &ops;
      auto start = Clock::now();
      auto r = run_named(alg, fam.instance, fam.tree, bounds, options);
      double t = seconds_since(start);
      if (!r.report.meets_bounds) o.fail(std::string(alg) + ": bounds not met");
      if (t >= 5) o.fail(std::string(alg) + " took " + std::to_string(t) + " s at n=" + std::to_string(n));
      sizes.push_back(static_cast<double>(n));
      counts.push_back(static_cast<double>(ops.count));
      summary << alg << " n=" << n << " ops=" << ops.count << " " << t << "s; ";
    }
    for (std::size_t i = 1; i < sizes.size(); ++i) {
      double growth = counts[i] / counts[i - 1], size = sizes[i] / sizes[i - 1];
      if (growth > 1.2 * size) {
        o.fail(std::string(alg) + ": op count grew " + std::to_string(growth) + "x for a " +
               std::to_string(size) + "x size increase");
      }
    }
  }
  if (o.pass) o.detail = summary.str();
  return o;
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> all{
      {"optimal adoptions equal exhaustive optimum on tree metrics", criterion1},
      {"flow/greedy/treedp within 1 + c on random point sets", criterion2},
      {"k-ary optimal ratio within [finite-k lower bound, 3/2]", criterion3},
      {"degree-3/4 trees from minimum spanning trees below 3/2, 5/3, 4/3", criterion4},
      {"path family optimum at least n/2 times w(T)", criterion5},
      {"layered point set witness, spanning tree and Hamilton bounds", criterion6},
      {"flow <-> sequence round trips", criterion7},
      {"linear-time algorithms scale linearly near 10^5 vertices", criterion8},
  };
  int only = argc > 1 ? std::stoi(argv[1]) : 0;
  int failed = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (only != 0 && only != static_cast<int>(i + 1)) continue;
    auto start = Clock::now();
    Outcome o;
    try {
      o = all[i].run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("%s AC%zu %s [%.1fs] %s\n", o.pass ? "PASS" : "FAIL", i + 1, all[i].name, seconds_since(start),
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
