#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cubik/geometry.h"
#include "cubik/rational.h"

namespace cubik {

// Adversarial family on an integer knapsack of side N = 2^(m+1): for each
// level i in [1, m] a triple of unit-profit items
//   G_i: (N+1-2^(i-1)) x (N+1-2^(i-1)) x 2^(i-1)   (bottom slab)
//   H_i: 2^(i-1) x (N+1-2^(i-1)) x (N+1-2^i)       (left wall)
//   I_i: (N+1-2^i) x 2^(i-1) x (N+1-2^i)           (front wall)
// with ids 3(i-1), 3(i-1)+1, 3(i-1)+2. The whole instance packs (see
// hardness_optimal_packing) but any fixed small set of containers retains
// only about a third of the profit. Requires 1 <= m <= 20.
Instance gen_hardness(int m);

// The nested corner packing of every gen_hardness(m) item: level i fills the
// bottom slab, left wall and front wall of the current free cube, leaving a
// (N+1-2^i)^3 cube at offset (2^i-1, 2^i-1, 2^i-1) for level i+1. Passes
// validate_packing against gen_hardness(m); profit 3m.
PackingSolution hardness_optimal_packing(int m);

// Deterministic random instances on the unit knapsack, reproducible per
// (family, n, seed, params). Families:
//   "cubes"          cubes with side in [0.05, 0.35]
//   "thin-I1"        heights at most params["mu"] (default 0.01)
//   "mixed-classes"  blend of large, thin (each axis) and slab shapes
//   "lemma-feasible:<routine>" items built to satisfy the guarantee
//     hypotheses of one packing routine, including its total-size budget:
//       nfdh_2d       footprints <= eps, total area <= 1-2*eps
//       nfdh_3d       dims <= eps, total volume <= 1-3*eps
//       steinberg     footprints <= 1/2, total area <= 1/2
//       pack_sheets   w >= 1/2, d <= delta, total area <= 3/4-3*delta
//       vol_pack_3d   half base, h <= eps, total volume <= 1/3-2*eps
//       vol_pack_3dr  min dim <= eps^2, total volume <= 7/24-5*eps
// Recognized params: "eps", "mu", "delta", "rot" (nonzero turns rotation on;
// vol_pack_3dr always allows it). Unknown family or a budget that the
// parameters drive to zero raises std::invalid_argument.
Instance gen_random(const std::string& family, int n, std::uint64_t seed,
                    const std::map<std::string, double>& params = {});

std::vector<std::string> random_families();

}  // namespace cubik
