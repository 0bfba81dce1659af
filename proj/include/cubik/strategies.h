#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cubik/classify.h"
#include "cubik/containers.h"
#include "cubik/geometry.h"

namespace cubik {

// Outcome of one constructive strategy. The solution is expressed in the
// coordinates of the box the strategy worked in (the unit knapsack for the
// instance-level strategies) and every placement lies inside one of the
// layout containers. `label` records which construction branch fired;
// strategies that do not apply (guard failed, rotation missing) come back
// with applicable=false, an empty solution and the reason in `note`.
struct StrategyResult {
  PackingSolution solution;
  std::vector<Container> layout;
  std::string label;
  bool applicable = true;
  std::string note;
};

// Shelf-of-stacks layout: items sorted by profit (ties by id) are placed
// first-fit into rows along x, rows advance along y, full layers advance
// along z; every placed item becomes its own Stack container with the item's
// exact dimensions. Items that fit nowhere are skipped; placement stops after
// `limit` items. Assumes a unit knapsack.
StrategyResult strat_stack_singletons(const std::vector<Item>& items, std::size_t limit);

// Splits `box` by a horizontal plane into a bottom Steinberg container
// holding the half-base items (neither footprint side above half the box's)
// and a Stack container above holding a profit/height-sorted maximal prefix
// of the big-base rest. The Steinberg height is 3(1+7e^2)v/(w*d) + e^2*h_B
// rounded up to a multiple of e^2*h_B and clamped at the box height.
// Preconditions (PreconditionError otherwise): item footprints within the
// base, v(T) <= v(box)/4, and every half-base item no taller than the bottom
// container (with theory_strict instead: no taller than eps^4 * box height).
StrategyResult strat_split_stack_steinberg(const Box3D& box, const std::vector<Item>& T,
                                           double eps, bool theory_strict = false);

// Best of: stack singletons on the large items, and for each thin class a
// profit-density prefix of volume at most 1/4 fed through
// strat_split_stack_steinberg (axis-permuted so the class's thin dimension
// plays the height role). Requires a unit knapsack.
StrategyResult strat_simple5(const Instance& inst, double eps, double mu);

// Packs height-thin items into the unit knapsack; best of two sub-branches:
// (a) profit-density prefix of the half-base items with volume at most
// 1/3 - 2*eps into a full-knapsack Steinberg container, and (b) a
// volume-dependent Steinberg + Stack split: for small total volume
// (v <= 2*eps) both containers get height 8*eps, otherwise the Steinberg
// height tracks the half-base volume and the Stack above receives a
// profit/height prefix of the big-base items, the total height capped at
// eps^2*floor(3v/eps^2).
StrategyResult strat_I1_pack(const std::vector<Item>& items_I1, double eps);

// Bottom: the strat_I1_pack split of the height-thin items, capped at total
// height 1/2. Top: the leftover box filled with the best of a width-thin
// split, a depth-thin split (each a density prefix of volume at most a
// quarter of the box), or shelf singletons of the short large items. Guard:
// skipped when the height-thin volume exceeds 1/6. Requires a unit knapsack.
StrategyResult strat_combined_fourth(const Instance& inst, double eps, double mu);

// Rotational volume packer: density-sorted prefix of the non-large items
// with volume at most 7/24 - 5*sqrt(mu) fed to vol_pack_3dr(sqrt(mu)).
// Skipped when rotation is off or sqrt(mu) >= 7/120. Requires a unit
// knapsack.
StrategyResult strat_rot_volume(const Instance& inst, double mu);

// Rotational best-of-three: singletons on the large items; the slab items
// (two sorted dimensions above 1/2, smallest at most mu) hung in a
// full-knapsack L-container; the remaining thin items in a full-knapsack
// Steinberg container. Skipped when rotation is off. Requires a unit
// knapsack.
StrategyResult strat_rot_uniform_density(const Instance& inst, double mu);

struct PortfolioConfig {
  bool use_gap = true;
  long long gap_node_limit = 200000;
  std::vector<std::string> only;  // restrict to these strategy names; empty = all
  // strategies evaluated on up to this many worker threads; the winner is
  // still reduced in strategy order, so results match the sequential run
  int threads = 1;
};

// Names accepted by PortfolioConfig::only, in evaluation order.
std::vector<std::string> portfolio_strategy_names();

// Runs every applicable strategy on the instance (normalized to a unit
// knapsack and scaled back afterwards), optionally re-optimizes each layout's
// item assignment through the GAP solver (kept only when it strictly
// improves), and returns the best validated solution. Provenance carries the
// winning label, the container layout and the per-strategy notes as JSON.
PackingSolution portfolio_solve(const Instance& inst, const PortfolioConfig& config = {});

}  // namespace cubik
