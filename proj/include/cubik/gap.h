#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cubik/containers.h"
#include "cubik/geometry.h"
#include "cubik/rational.h"

namespace cubik {

// One 1D knapsack per container: capacity cap(C), item size f_C (nullopt =
// inadmissible there), profit the item's own profit everywhere.
struct GapInstance {
  std::vector<double> caps;
  std::vector<int> item_ids;
  std::vector<Rat> profits;
  std::vector<std::vector<std::optional<double>>> sizes;  // [item][knapsack]

  std::size_t n() const { return item_ids.size(); }
  std::size_t k() const { return caps.size(); }
};

// containers must pass check_container_layout (throws PreconditionError)
GapInstance build_gap_instance(const std::vector<Container>& containers,
                               const std::vector<Item>& items, bool allow_rotation);

struct GapResult {
  std::vector<int> assign;  // knapsack index per item position, -1 = unassigned
  Rat profit;
  bool optimal = false;
};

// Exact branch-and-bound: items in input order, options knapsack 0..k-1 then
// none, so the first optimum found is the lexicographically smallest (with
// "none" ordered last). Bounds: exact remaining-profit sum, fractional
// knapsack on pooled capacity. Requires n <= 40, k <= 12; when the node
// budget runs out the best assignment so far is returned with optimal=false.
GapResult solve_gap_exact(const GapInstance& g, std::int64_t node_limit = 10'000'000);

// Density first-fit, or the single most profitable item when that is better.
GapResult solve_gap_greedy(const GapInstance& g);

}  // namespace cubik
