#include "commands.hpp"

#include "adopt/adopt.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace adopt::cli {
namespace {

struct GenArgs {
  std::string out;
  // kary
  std::size_t D = 4;
  std::size_t depth = 2;
  std::size_t kary_d = 0;  // 0: D - 1
  // path
  std::size_t edges = 3;
  // t2
  std::int64_t t2_n = 3;
  std::int64_t t2_k = 1;
  int truncate = -1;
  std::size_t t2_d = 2;
  std::string t2_norm = "l2";
  // random
  std::size_t random_n = 50;
  std::string random_norm = "l2";
  std::uint64_t seed = 1;
  std::size_t random_d = 2;
  std::size_t d_min = 0;  // with d_max: per-vertex bounds drawn from the seed
  std::size_t d_max = 0;
};

struct SolveArgs {
  std::string input;
  std::string algorithm = "flow";
  Vertex root = 0;
  std::string policy = "min-delta";
  std::string out;
  std::string trace;
  std::string flow_out;
  std::string format = "text";
  bool strict_metric = false;
  bool restrict_arcs = false;
};

struct VerifyArgs {
  std::string input;
  std::string tree;
};

struct TableArgs {
  std::string family = "kary";
  std::string format = "text";
  std::vector<std::string> algorithms{"flow", "greedy", "treedp"};
  std::size_t D = 4;
  std::size_t d = 3;
  std::size_t k_min = 1;
  std::size_t k_max = 5;
  std::int64_t n = 0;  // t2: 0 means n = 2k
  bool with_mst = false;
};

struct OracleArgs {
  std::string kind;
  std::string input;
};

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw ParseError("cannot write " + path);
  f << content;
  if (!f) throw ParseError("error writing " + path);
}

void emit_instance(const Json& doc, const GenArgs& a, std::ostream& out) {
  if (a.out.empty()) {
    out << doc.dump() << '\n';
  } else {
    write_text_file(a.out, doc.dump() + "\n");
  }
}

// Parameter echo goes to stdout when the instance goes to a file, and to
// stderr when the instance itself is written to stdout.
std::ostream& echo_stream(const GenArgs& a, std::ostream& out, std::ostream& err) {
  return a.out.empty() ? err : out;
}

int gen_kary_cmd(const GenArgs& a, std::ostream& out, std::ostream& err) {
  auto fam = gen_kary(a.D, a.depth);
  std::size_t d = a.kary_d == 0 ? a.D - 1 : a.kary_d;
  auto bounds = DegreeBounds::uniform(fam.tree.vertex_count(), d);
  emit_instance(instance_to_json(fam.instance, bounds), a, out);
  auto& echo = echo_stream(a, out, err);
  echo << "family kary D=" << a.D << " depth=" << a.depth << " d=" << d << " n=" << fam.tree.vertex_count()
       << '\n';
  if (d >= 2 && d <= a.D) {
    Rational lb = kary_lower_bound(a.D, d, a.depth);
    echo << "lower_bound " << format_weight(lb) << " (" << to_double(lb) << ")\n";
  }
  if (d >= 2) echo << "upper_bound " << format_weight(performance_bound(fam.tree, bounds)) << '\n';
  return kOk;
}

int gen_path_cmd(const GenArgs& a, std::ostream& out, std::ostream& err) {
  auto fam = gen_path(a.edges);
  emit_instance(instance_to_json(fam.instance, std::optional(fam.bounds)), a, out);
  auto& echo = echo_stream(a, out, err);
  std::size_t n = a.edges;
  echo << "family path edges=" << n << " root=0 d(root)=" << n << '\n';
  echo << "lower_bound_ratio " << format_weight(Rational(static_cast<std::int64_t>(n), 2)) << '\n';
  return kOk;
}

int gen_t2_cmd(const GenArgs& a, std::ostream& out, std::ostream& err) {
  Norm norm = parse_norm(a.t2_norm);
  T2PointSet set = a.truncate >= 0 ? gen_t2_truncated(a.t2_n, a.t2_k, a.truncate, norm) : gen_t2(a.t2_n, a.t2_k, norm);
  auto instance = set.instance();
  auto bounds = DegreeBounds::uniform(set.size(), a.t2_d);
  std::optional<SpanningTree> witness;
  if (a.truncate < 0) witness = t2_witness_tree(set);
  emit_instance(instance_to_json(instance, std::optional(bounds), witness), a, out);
  auto& echo = echo_stream(a, out, err);
  echo << "family t2 n=" << a.t2_n << " k=" << a.t2_k << " points=" << set.size() << " norm=" << norm_name(norm)
       << '\n';
  if (witness) echo << "witness_weight " << format_weight(tree_weight(*witness, instance)) << '\n';
  if (a.t2_n >= 2 * a.t2_k) {
    auto b = t2_bounds(a.t2_n, a.t2_k);
    echo << "path_lower " << b.path_lower << "\ntree_upper " << b.tree_upper << "\ncircle_sum " << b.circle_sum
         << "\nratio_floor " << format_weight(b.ratio_floor) << '\n';
    if (a.truncate >= 0) echo << "circle_bound " << t2_circle_bound(set) << '\n';
  }
  return kOk;
}

int gen_random_cmd(const GenArgs& a, std::ostream& out, std::ostream& err) {
  Norm norm = parse_norm(a.random_norm);
  auto instance = gen_random(a.random_n, norm, a.seed);
  DegreeBounds bounds;
  if (a.d_max > 0) {
    if (a.d_min < 1 || a.d_min > a.d_max) throw InvalidArgument("need 1 <= --d-min <= --d-max");
    // Separate stream from the points so --d-min/--d-max leave them unchanged.
    SplitMix64 rng(a.seed ^ 0x5DEECE66DULL);
    std::vector<std::size_t> d(a.random_n);
    for (auto& x : d) x = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(a.d_min),
                                                                static_cast<std::int64_t>(a.d_max)));
    bounds = DegreeBounds(std::move(d));
  } else {
    bounds = DegreeBounds::uniform(a.random_n, a.random_d);
  }
  emit_instance(instance_to_json(instance, std::optional(bounds)), a, out);
  echo_stream(a, out, err) << "family random n=" << a.random_n << " norm=" << norm_name(norm)
                           << " seed=" << a.seed << '\n';
  return kOk;
}

NeighborPolicy parse_policy(const std::string& s) {
  if (s == "min-delta") return NeighborPolicy::MinDelta;
  if (s == "first") return NeighborPolicy::FirstEligible;
  throw ParseError("unknown policy '" + s + "' (expected min-delta or first)");
}

template <WeightType W>
SolveResult<W> run_algorithm(const std::string& algorithm, const MetricInstance<W>& instance,
                             const SpanningTree& tree, const DegreeBounds& bounds, const SolveOptions& options) {
  if (algorithm == "flow") return solve_optimal(instance, tree, bounds, options);
  if (algorithm == "greedy") return algorithm1(instance, tree, bounds, options);
  if (algorithm == "treedp") return algorithm2(instance, tree, bounds, options);
  throw ParseError("unknown algorithm '" + algorithm + "' (expected flow, greedy or treedp)");
}

int solve_cmd(const SolveArgs& a, std::ostream& out) {
  InstanceFile file = read_instance(a.input);
  if (!file.bounds) throw ParseError(a.input + ": instance has no bounds");
  SolveOptions options;
  options.policy = parse_policy(a.policy);
  options.metric_check = a.strict_metric ? MetricCheck::Error : MetricCheck::Warn;
  options.root = a.root;
  options.restrict_arcs = a.restrict_arcs;
  OutputFormat format = parse_format(a.format);
  std::visit(
      [&](const auto& instance) {
        auto tree = initial_tree(file, instance);
        auto result = run_algorithm(a.algorithm, instance, tree, *file.bounds, options);
        write_report(out, result.report, format);
        if (!a.out.empty()) write_text_file(a.out, tree_to_json(result.tree).dump() + "\n");
        if (!a.trace.empty()) {
          std::ostringstream t;
          write_trace(t, result.sequence);
          if (a.trace == "-") {
            out << t.str();
          } else {
            write_text_file(a.trace, t.str());
          }
        }
        if (!a.flow_out.empty()) {
          std::ostringstream f;
          write_flow_dump(f, result.flow, instance);
          write_text_file(a.flow_out, f.str());
        }
      },
      file.metric);
  return kOk;
}

template <WeightType W>
bool within(const W& value, const Rational& limit) {
  if constexpr (std::floating_point<W>) {
    double l = to_double(limit);
    return value <= l * (1 + 1e-9);
  } else {
    return value <= limit;
  }
}

int verify_cmd(const VerifyArgs& a, std::ostream& out) {
  InstanceFile file = read_instance(a.input);
  TreeFile tf = parse_tree(read_json_file(a.tree));
  bool ok = true;
  auto fail = [&](const std::string& what) {
    out << "FAIL " << what << '\n';
    ok = false;
  };
  std::size_t n = file.size();
  if (tf.n != n) fail("structure: tree has n = " + std::to_string(tf.n) + ", instance has " + std::to_string(n));
  auto problems = tree_problems(n, tf.edges);
  for (const auto& p : problems) fail("structure: " + p);
  if (!ok) return kVerifyFailed;
  out << "PASS spanning tree\n";
  auto tree = SpanningTree::from_edges(n, tf.edges);
  if (file.bounds) {
    auto bad = bound_violations(tree, *file.bounds);
    for (Vertex v : bad) {
      fail("degree: vertex " + std::to_string(v) + " has degree " + std::to_string(tree.degree(v)) +
           " > d(v) = " + std::to_string((*file.bounds)[v]));
    }
    if (bad.empty()) out << "PASS degree bounds\n";
  } else {
    out << "SKIP degree bounds (instance has none)\n";
  }
  std::visit(
      [&](const auto& instance) {
        auto reference = initial_tree(file, instance);
        auto w = tree_weight(tree, instance);
        auto w0 = tree_weight(reference, instance);
        out << "weight " << format_weight(w) << "\nreference " << format_weight(w0) << '\n';
        if (w0 == decltype(w0)(0)) return;
        auto ratio = weight_ratio(w, w0);
        out << "ratio " << format_weight(ratio) << '\n';
        if (file.bounds && file.bounds->all_at_least(2) && check_triangle(instance).empty()) {
          Rational bound = performance_bound(reference, *file.bounds);
          if (within(ratio, bound)) {
            out << "PASS guarantee ratio <= " << format_weight(bound) << '\n';
          } else {
            fail("guarantee: ratio exceeds " + format_weight(bound));
          }
        }
      },
      file.metric);
  return ok ? kOk : kVerifyFailed;
}

void print_row(std::ostream& out, const std::vector<std::string>& cells, OutputFormat format,
               const std::vector<std::size_t>& widths) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (format == OutputFormat::Csv) {
      out << (i ? "," : "") << cells[i];
    } else {
      out << (i ? "  " : "") << std::left << std::setw(static_cast<int>(widths[i])) << cells[i];
    }
  }
  out << '\n';
}

void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows, OutputFormat format) {
  std::vector<std::size_t> widths(rows.front().size(), 0);
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) widths[i] = std::max(widths[i], r[i].size());
  }
  for (const auto& r : rows) print_row(out, r, format, widths);
}

std::string decimal(double x) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << x;
  return s.str();
}

int ratio_table_cmd(const TableArgs& a, std::ostream& out) {
  OutputFormat format = parse_format(a.format);
  if (format == OutputFormat::Json) throw ParseError("ratio-table supports text and csv");
  std::vector<std::vector<std::string>> rows;
  if (a.family == "kary") {
    std::vector<std::string> header{"D", "d", "k", "n", "lower"};
    for (const auto& alg : a.algorithms) header.push_back(alg);
    header.push_back("upper");
    rows.push_back(header);
    for (std::size_t k = a.k_min; k <= a.k_max; ++k) {
      auto fam = gen_kary(a.D, k);
      auto bounds = DegreeBounds::uniform(fam.tree.vertex_count(), a.d);
      std::vector<std::string> row{std::to_string(a.D), std::to_string(a.d), std::to_string(k),
                                   std::to_string(fam.tree.vertex_count()),
                                   decimal(to_double(kary_lower_bound(a.D, a.d, k)))};
      for (const auto& alg : a.algorithms) {
        auto r = run_algorithm(alg, fam.instance, fam.tree, bounds, {});
        row.push_back(decimal(to_double(r.report.ratio)));
      }
      row.push_back(decimal(to_double(performance_bound(fam.tree, bounds))));
      rows.push_back(row);
    }
  } else if (a.family == "t2") {
    std::vector<std::string> header{"n", "k", "points", "path_lower", "tree_upper", "ratio_floor", "witness"};
    if (a.with_mst) header.push_back("mst");
    rows.push_back(header);
    for (std::size_t k = a.k_min; k <= a.k_max; ++k) {
      auto kk = static_cast<std::int64_t>(k);
      std::int64_t n = a.n > 0 ? a.n : 2 * kk;
      auto set = gen_t2(n, kk);
      auto b = t2_bounds(n, kk);
      auto instance = set.instance();
      std::vector<std::string> row{std::to_string(n),
                                   std::to_string(k),
                                   std::to_string(set.size()),
                                   std::to_string(b.path_lower),
                                   std::to_string(b.tree_upper),
                                   decimal(to_double(b.ratio_floor)),
                                   format_weight(tree_weight(t2_witness_tree(set), instance))};
      if (a.with_mst) row.push_back(decimal(tree_weight(mst(instance), instance)));
      rows.push_back(row);
    }
  } else {
    throw ParseError("unknown family '" + a.family + "' (expected kary or t2)");
  }
  print_table(out, rows, format);
  return kOk;
}

int oracle_cmd(const OracleArgs& a, std::ostream& out) {
  InstanceFile file = read_instance(a.input);
  std::visit(
      [&](const auto& instance) {
        if (a.kind == "dbst") {
          if (!file.bounds) throw ParseError(a.input + ": instance has no bounds");
          auto best = brute_dbst(instance, *file.bounds);
          out << "weight " << format_weight(best.weight) << '\n';
          for (const Edge& e : best.tree.edges()) out << "EDGE " << e.u << ' ' << e.v << '\n';
        } else {
          auto best = brute_hamilton_path(instance);
          out << "weight " << format_weight(best.weight) << "\npath";
          for (Vertex v : best.order) out << ' ' << v;
          out << '\n';
        }
      },
      file.metric);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Degree-bounded spanning trees by adoptions", "adopt"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance file");
  gen_cmd->require_subcommand(1);
  auto* kary = gen_cmd->add_subcommand("kary", "Unit complete (D-1)-ary tree");
  kary->add_option("--D", gen.D, "Degree parameter (branching D-1)")->check(CLI::Range(3, 1000));
  kary->add_option("--depth", gen.depth, "Depth k")->check(CLI::Range(1, 64));
  kary->add_option("--d", gen.kary_d, "Uniform degree bound (default D-1)");
  auto* path = gen_cmd->add_subcommand("path", "Unit path with one unbounded endpoint");
  path->add_option("--edges", gen.edges, "Number of edges")->check(CLI::Range(1, 100000));
  auto* t2 = gen_cmd->add_subcommand("t2", "Layered point set");
  t2->add_option("--n", gen.t2_n, "Construction parameter n");
  t2->add_option("--k", gen.t2_k, "Number of levels k");
  t2->add_option("--truncate", gen.truncate, "Keep levels 0..L only, without the axis endpoints");
  t2->add_option("--d", gen.t2_d, "Uniform degree bound");
  t2->add_option("--norm", gen.t2_norm, "l1, l2 or linf");
  auto* random = gen_cmd->add_subcommand("random", "Uniform points in the unit square");
  random->add_option("--n", gen.random_n, "Number of points")->check(CLI::Range(2, 1000000));
  random->add_option("--norm", gen.random_norm, "l1, l2 or linf");
  random->add_option("--seed", gen.seed, "Random seed");
  random->add_option("--d", gen.random_d, "Uniform degree bound");
  random->add_option("--d-min", gen.d_min, "Smallest random per-vertex bound");
  random->add_option("--d-max", gen.d_max, "Largest random per-vertex bound");
  for (auto* c : {kary, path, t2, random}) c->add_option("--out,-o", gen.out, "Instance file (default stdout)");

  SolveArgs solve;
  auto* solve_cmd_ = app.add_subcommand("solve", "Bring an instance's tree within its degree bounds");
  solve_cmd_->add_option("input", solve.input, "Instance file")->required();
  solve_cmd_->add_option("--algorithm,-a", solve.algorithm, "flow, greedy or treedp");
  solve_cmd_->add_option("--root", solve.root, "Root for greedy and treedp");
  solve_cmd_->add_option("--policy", solve.policy, "min-delta or first");
  solve_cmd_->add_option("--out,-o", solve.out, "Write the result tree here");
  solve_cmd_->add_option("--trace", solve.trace, "Write the adoption trace here ('-' for stdout)");
  solve_cmd_->add_option("--flow-out", solve.flow_out, "Write the adoption flow here");
  solve_cmd_->add_option("--format", solve.format, "text, csv or json");
  solve_cmd_->add_flag("--strict-metric", solve.strict_metric, "Reject matrices violating the triangle inequality");
  solve_cmd_->add_flag("--restrict", solve.restrict_arcs, "flow: only leaf -> deficit-vertex arcs");

  VerifyArgs verify;
  auto* verify_cmd_ = app.add_subcommand("verify", "Check a tree against an instance");
  verify_cmd_->add_option("input", verify.input, "Instance file")->required();
  verify_cmd_->add_option("tree", verify.tree, "Tree file")->required();

  TableArgs table;
  auto* table_cmd = app.add_subcommand("ratio-table", "Ratios against closed-form bounds over a sweep");
  table_cmd->add_option("--family", table.family, "kary or t2");
  table_cmd->add_option("--format", table.format, "text or csv");
  table_cmd->add_option("--algorithms", table.algorithms, "Algorithms to run (kary)")->delimiter(',');
  table_cmd->add_option("--D", table.D, "kary degree parameter");
  table_cmd->add_option("--d", table.d, "kary uniform bound");
  table_cmd->add_option("--k-min", table.k_min, "First k");
  table_cmd->add_option("--k-max", table.k_max, "Last k");
  table_cmd->add_option("--n", table.n, "t2 parameter n (default 2k)");
  table_cmd->add_flag("--mst", table.with_mst, "t2: also compute the minimum spanning tree weight");

  OracleArgs oracle;
  auto* oracle_cmd_ = app.add_subcommand("oracle", "Exhaustive solvers for small instances");
  oracle_cmd_->add_option("kind", oracle.kind, "dbst or hamilton")->required()->check(CLI::IsMember({"dbst", "hamilton"}));
  oracle_cmd_->add_option("input", oracle.input, "Instance file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (kary->parsed()) return gen_kary_cmd(gen, out, err);
    if (path->parsed()) return gen_path_cmd(gen, out, err);
    if (t2->parsed()) return gen_t2_cmd(gen, out, err);
    if (random->parsed()) return gen_random_cmd(gen, out, err);
    if (solve_cmd_->parsed()) return solve_cmd(solve, out);
    if (verify_cmd_->parsed()) return verify_cmd(verify, out);
    if (table_cmd->parsed()) return ratio_table_cmd(table, out);
    if (oracle_cmd_->parsed()) return oracle_cmd(oracle, out);
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace adopt::cli
