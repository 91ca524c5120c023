// Brings the unit complete ternary tree of depth 4 down to maximum degree 3
// with each algorithm and prints the weight ratios next to the lower bound.

#include "adopt/adopt.hpp"

#include <cstdio>

int main() {
  using namespace adopt;
  auto fam = gen_kary(4, 4);
  auto bounds = DegreeBounds::uniform(fam.tree.vertex_count(), 3);
  std::printf("n = %zu, lower bound %s, guarantee %s\n", fam.tree.vertex_count(),
              format_weight(kary_lower_bound(4, 3, 4)).c_str(),
              format_weight(performance_bound(fam.tree, bounds)).c_str());
  auto flow = solve_optimal(fam.instance, fam.tree, bounds);
  auto greedy = algorithm1(fam.instance, fam.tree, bounds);
  auto treedp = algorithm2(fam.instance, fam.tree, bounds);
  for (const auto* r : {&flow.report, &greedy.report, &treedp.report}) {
    std::printf("%-7s ratio %-8s (%.4f)  meets bounds: %s\n", r->algorithm.c_str(), format_weight(r->ratio).c_str(),
                to_double(r->ratio), r->meets_bounds ? "yes" : "no");
  }
}
