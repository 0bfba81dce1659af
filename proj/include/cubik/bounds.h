#pragma once

// Exact-rational reproduction of the framework's worst-case guarantees. A
// ProfitProfile splits an optimal packing's profit and volume by item class;
// the functions below evaluate the certified lower bounds on the best
// container packing and the resulting approximation ratios with the epsilon
// slop set to zero, so tight profiles certify exact constants.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cubik/rational.h"

namespace cubik {

// Classes: 1 = height-thin, 2 = width-thin, 3 = depth-thin, L = no thin
// dimension. Per class i, the "l" part has both remaining dimensions above
// 1/2 (slabs) and "s" is the rest. For classes 2, 3 and L the "t" part has
// height at most 1/2 (packable above a low stack) and "h" is the taller
// remainder. v* are the volumes of the matching item sets.
struct ProfitProfile {
  Rat opt1, opt2, opt3, optL;
  Rat opt1l, opt1s;
  Rat opt2l, opt2s, opt3l, opt3s;
  Rat opt2t, opt2h, opt3t, opt3h;
  Rat optLt, optLh;
  Rat v1, v2, v3;
  Rat v1s, v2s, v3s;

  Rat total() const { return opt1 + opt2 + opt3 + optL; }
};

// Throws std::invalid_argument when a component is negative, a split does
// not sum to its class total, or the class volumes exceed the knapsack.
void validate_profile(const ProfitProfile& p);

// Every certified lower bound applicable to the profile, keyed by a
// behavior-describing name. Volume-guarded bounds are emitted only when
// their guard holds. Entries prefixed "rot-" are only meaningful when item
// rotation is allowed.
std::map<std::string, Rat> lower_bound_formulas(const ProfitProfile& p);

enum class Variant {
  General,            // arbitrary profits, fixed orientation
  Simple,             // arbitrary profits, the short four-bound analysis
  Cardinality,        // unit profits, fixed orientation
  UniformDensity,     // profit == volume, fixed orientation
  Rotation,           // arbitrary profits, rotation allowed
  RotCardinality,     // unit profits, rotation allowed
  RotUniformDensity,  // profit == volume, rotation allowed
};

const char* variant_name(Variant v);
std::optional<Variant> variant_from_name(std::string_view name);
std::vector<Variant> all_variants();

// Worst-case ratio certified for this profile under the variant's analysis:
// total profit divided by the combined lower bound, dispatched on the
// profile's volume guards. Throws std::invalid_argument when the profile is
// invalid, has zero profit, or falls outside the analysis's cases.
Rat ratio_certificate(const ProfitProfile& p, Variant variant);

// Feasibility check of the fixed dual system that certifies the
// uniform-density ratio. `violations` lists each failed constraint.
struct DualCheck {
  bool feasible = false;
  Rat objective;
  std::vector<std::string> violations;
};

// The reference multiplier vector (y_1..y_13 in order); its objective is 1/4.
std::array<Rat, 13> reference_dual_solution();
DualCheck verify_dual_certificate(const std::array<Rat, 13>& y);
DualCheck verify_dual_certificate();

// Catalog of profiles on which each variant's analysis is exactly tight.
struct TightCase {
  Variant variant;
  ProfitProfile profile;
  Rat expected;
};
std::vector<TightCase> tight_instances();

}  // namespace cubik
