#pragma once

#include <cstdint>

#include "cubik/geometry.h"
#include "cubik/rational.h"

namespace cubik {

struct OracleLimits {
  int max_items = 8;
  std::int64_t node_budget = 50'000'000;  // placement attempts before giving up
};

struct OracleResult {
  Rat profit;
  PackingSolution solution;
  std::int64_t nodes = 0;
};

// Exact optimum by exhaustive search over item subsets, orientations and
// normal-pattern placements: candidate coordinates per axis are the sums of
// oriented extents of the chosen subset that fit the side. Any feasible
// axis-aligned packing can be pushed left/down/back onto such coordinates, so
// the search is placement-complete. Subsets are cut by exact profit and
// volume bounds; runs of identical items only try anchor positions in
// increasing order. Throws PreconditionError when the instance exceeds
// max_items or the placement search exceeds node_budget.
OracleResult oracle_exact(const Instance& inst, const OracleLimits& limits = {});

}  // namespace cubik
