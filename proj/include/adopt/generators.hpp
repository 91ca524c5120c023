#pragma once

#include "adopt/bounds.hpp"
#include "adopt/metric.hpp"
#include "adopt/prufer.hpp"
#include "adopt/spanning_tree.hpp"
#include "adopt/types.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

namespace adopt {

/// SplitMix64 (Steele, Lea, Flood). Increment 0x9E3779B97F4A7C15, mixing
/// multipliers 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB, shifts 30/27/31;
/// doubles take the top 53 bits.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform in [0, bound), by rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw InvalidArgument("below(0)");
    std::uint64_t limit = max() - max() % bound;
    for (;;) {
      std::uint64_t x = (*this)();
      if (x < limit) return x % bound;
    }
  }

  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::uint64_t state_;
};

inline std::int64_t checked_pow(std::int64_t base, std::int64_t exp) {
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(r, base, &r)) throw InvalidArgument("parameters overflow 64-bit arithmetic");
  }
  return r;
}

/// Complete rooted (D-1)-ary tree of depth k with unit edges, vertices
/// numbered in BFS order from the root 0.
struct KaryFamily {
  std::size_t D = 0;
  std::size_t depth = 0;
  SpanningTree tree;
  MetricInstance<Rational> instance;
  // level_prefix[i] = |S_i|, the number of vertices at depth <= i.
  std::vector<std::size_t> level_prefix;
};

inline std::vector<std::size_t> kary_level_prefix(std::size_t D, std::size_t k) {
  if (D < 3) throw InvalidArgument("k-ary family needs D >= 3");
  std::vector<std::size_t> prefix;
  std::size_t level = 1, total = 0;
  for (std::size_t i = 0; i <= k; ++i) {
    total += level;
    prefix.push_back(total);
    if (i < k && __builtin_mul_overflow(level, D - 1, &level)) throw InvalidArgument("k-ary tree too large");
  }
  return prefix;
}

inline KaryFamily gen_kary(std::size_t D, std::size_t k) {
  if (k < 1) throw InvalidArgument("k-ary family needs depth >= 1");
  KaryFamily fam;
  fam.D = D;
  fam.depth = k;
  fam.level_prefix = kary_level_prefix(D, k);
  std::size_t n = fam.level_prefix.back();
  if (n > (std::size_t{1} << 26)) throw InvalidArgument("k-ary tree too large");
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  // Children of v are (D-1)v + 1 .. (D-1)v + (D-1).
  for (Vertex c = 1; c < n; ++c) edges.push_back({(c - 1) / (D - 1), c});
  fam.tree = SpanningTree::from_edges(n, edges);
  fam.instance = unit_tree_instance<Rational>(fam.tree);
  return fam;
}

/// 1 + sum_{i<k}(|S_i|(D-d) - 1) / sum_{i<k}(|S_i|(D-2) + 1), at least 1:
/// a lower bound on w(T*)/w(T) for any spanning tree T* of maximum degree d
/// over the k-ary family's vertices.
inline Rational kary_lower_bound(std::size_t D, std::size_t d, std::size_t k) {
  if (d < 2 || d > D) throw InvalidArgument("kary_lower_bound needs 2 <= d <= D");
  if (k < 1) throw InvalidArgument("kary_lower_bound needs k >= 1");
  auto prefix = kary_level_prefix(D, k);
  std::int64_t num = 0, den = 0;
  for (std::size_t i = 0; i < k; ++i) {
    auto s = static_cast<std::int64_t>(prefix[i]);
    num += s * static_cast<std::int64_t>(D - d) - 1;
    den += s * static_cast<std::int64_t>(D - 2) + 1;
  }
  return std::max(Rational(1), Rational(1) + Rational(num, den));
}

/// Unit path 0 - 1 - ... - n_edges with r = 0; d(r) = n_edges, others 1.
struct PathFamily {
  SpanningTree tree;
  MetricInstance<Rational> instance;
  DegreeBounds bounds;
};

inline PathFamily gen_path(std::size_t n_edges) {
  if (n_edges < 1) throw InvalidArgument("path family needs at least one edge");
  std::size_t n = n_edges + 1;
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  PathFamily fam;
  fam.tree = SpanningTree::from_edges(n, edges);
  fam.instance = unit_tree_instance<Rational>(fam.tree);
  std::vector<std::size_t> d(n, 1);
  d[0] = n_edges;
  fam.bounds = DegreeBounds(std::move(d));
  return fam;
}

/// Layered point set: base points on the x-axis and level points above
/// them; level j holds n^j points at height n^(k-j).
struct T2PointSet {
  std::int64_t n = 0;
  std::int64_t k = 0;
  Norm norm = Norm::L2;
  std::vector<Point> points;
  // Level of each point; -1 for base points.
  std::vector<int> level;
  // Base point directly below each level point (kNoVertex for base points).
  std::vector<Vertex> foot;

  std::size_t size() const { return points.size(); }
  MetricInstance<double> instance() const { return MetricInstance<double>::from_points(points, norm); }
};

namespace detail {

/// The construction itself is defined for any n >= 2; the lower-bound
/// argument (empty, disjoint discs) needs n >= 2k.
inline void check_t2_params(std::int64_t n, std::int64_t k, bool for_bounds) {
  if (k < 1) throw InvalidArgument("T2 needs k >= 1");
  if (n < 2) throw InvalidArgument("T2 needs n >= 2");
  if (for_bounds && n < 2 * k) throw InvalidArgument("T2 bounds need n >= 2k");
  // 2 n^k must fit comfortably in a double mantissa.
  if (checked_pow(n, k) > (std::int64_t{1} << 40)) throw InvalidArgument("T2 parameters too large");
}

/// Base points first, by x; then level points by (level, i).
inline T2PointSet build_t2(std::int64_t n, std::int64_t k, int max_level, bool endpoints, Norm norm) {
  T2PointSet set;
  set.n = n;
  set.k = k;
  set.norm = norm;
  std::int64_t width = 2 * checked_pow(n, k);
  std::map<std::int64_t, Vertex> base;
  if (endpoints) {
    base[0];
    base[width];
  }
  std::vector<std::pair<int, std::int64_t>> levels;  // (level, x)
  for (int j = 0; j <= max_level; ++j) {
    std::int64_t step = checked_pow(n, k - j);
    std::int64_t count = checked_pow(n, j);
    for (std::int64_t i = 1; i <= count; ++i) {
      std::int64_t x = (2 * i - 1) * step;
      levels.push_back({j, x});
      base[x];
    }
  }
  std::size_t total = base.size() + levels.size();
  set.points.reserve(total);
  set.level.reserve(total);
  set.foot.reserve(total);
  for (auto& [x, id] : base) {
    id = set.points.size();
    set.points.push_back({static_cast<double>(x), 0.0});
    set.level.push_back(-1);
    set.foot.push_back(kNoVertex);
  }
  for (auto [j, x] : levels) {
    set.points.push_back({static_cast<double>(x), static_cast<double>(checked_pow(n, k - j))});
    set.level.push_back(j);
    set.foot.push_back(base.at(x));
  }
  return set;
}

}  // namespace detail

/// Full construction, with coinciding base points kept once.
inline T2PointSet gen_t2(std::int64_t n, std::int64_t k, Norm norm = Norm::L2) {
  detail::check_t2_params(n, k, false);
  return detail::build_t2(n, k, static_cast<int>(k), true, norm);
}

/// Levels 0..max_level only and no axis endpoints; small enough for exact
/// Hamilton-path search.
inline T2PointSet gen_t2_truncated(std::int64_t n, std::int64_t k, int max_level, Norm norm = Norm::L2) {
  detail::check_t2_params(n, k, true);
  if (max_level < 0 || max_level > k) throw InvalidArgument("truncation level out of range");
  return detail::build_t2(n, k, max_level, false, norm);
}

struct T2Bounds {
  std::int64_t path_lower = 0;  // 2(k-2) n^k; nonpositive for k <= 2
  std::int64_t tree_upper = 0;  // (k+3) n^k
  std::int64_t circle_sum = 0;  // 2k n^(k-1) (n-2)
  Rational ratio_floor{0};      // 2(k-2)/(k+3)
};

inline T2Bounds t2_bounds(std::int64_t n, std::int64_t k) {
  detail::check_t2_params(n, k, true);
  T2Bounds b;
  std::int64_t nk = checked_pow(n, k);
  b.path_lower = 2 * (k - 2) * nk;
  b.tree_upper = (k + 3) * nk;
  b.circle_sum = 2 * k * checked_pow(n, k - 1) * (n - 2);
  b.ratio_floor = Rational(2 * (k - 2), k + 3);
  return b;
}

/// Radius of the empty disc around a level-j point: n^(k-j-1) (n-2) for
/// j < k, 0 on the last level.
inline std::int64_t t2_circle_radius(std::int64_t n, std::int64_t k, int j) {
  return j < k ? checked_pow(n, k - j - 1) * (n - 2) : 0;
}

/// Hamilton-path lower bound from the discs of the levels present in
/// `set`: every path crosses each disc boundary twice, except that each of
/// its two endpoints may save one radius.
inline std::int64_t t2_circle_bound(const T2PointSet& set) {
  detail::check_t2_params(set.n, set.k, true);
  std::int64_t sum = 0, largest = 0;
  for (int j : set.level) {
    if (j < 0) continue;
    std::int64_t r = t2_circle_radius(set.n, set.k, j);
    sum += 2 * r;
    largest = std::max(largest, r);
  }
  return sum - 2 * largest;
}

/// The path through the base points in x order plus a vertical edge from
/// every level point to its foot.
inline SpanningTree t2_witness_tree(const T2PointSet& set) {
  std::vector<Edge> edges;
  Vertex prev = kNoVertex;
  for (Vertex v = 0; v < set.size(); ++v) {
    if (set.level[v] >= 0) {
      edges.push_back({v, set.foot[v]});
    } else {
      if (prev != kNoVertex) edges.push_back({prev, v});
      prev = v;
    }
  }
  return SpanningTree::from_edges(set.size(), edges);
}

/// n points uniform in the unit square, reproducible from the seed.
inline MetricInstance<double> gen_random(std::size_t n, Norm norm, std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("random instance needs n >= 2");
  SplitMix64 rng(seed);
  std::vector<Point> pts(n);
  for (auto& p : pts) {
    p.x = rng.uniform();
    p.y = rng.uniform();
  }
  return MetricInstance<double>::from_points(std::move(pts), norm);
}

/// Uniformly random labelled tree on n vertices via a random Pruefer code.
inline SpanningTree random_tree(std::size_t n, SplitMix64& rng) {
  if (n == 0) throw InvalidArgument("random tree needs n >= 1");
  if (n == 1) return SpanningTree(1);
  if (n == 2) {
    Edge e{0, 1};
    return SpanningTree::from_edges(2, std::span<const Edge>(&e, 1));
  }
  std::vector<Vertex> seq(n - 2);
  for (auto& s : seq) s = rng.below(n);
  auto edges = prufer_decode(seq);
  return SpanningTree::from_edges(n, edges);
}

}  // namespace adopt
