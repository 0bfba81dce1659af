#pragma once

#include <string>
#include <vector>

#include "cubik/geometry.h"
#include "cubik/rational.h"

namespace cubik {

// Item ids partitioned by the mu thresholds, plus the aggregates the
// strategies and bounds read off the classes. Classes (mu = smallness cutoff):
//   L  - width, depth and height all exceed mu
//   I1 - height at most mu
//   I2 - width at most mu, not already in I1
//   I3 - the rest (their depth is at most mu)
// The l/s sub-split marks items whose two non-thin dimensions both exceed
// one half; S2/S3/S collect the members of I2/I3/L with height at most 1/2.
struct Classification {
  double mu = 0;
  std::vector<int> L, I1, I2, I3;
  std::vector<int> I1l, I1s, I2l, I2s, I3l, I3s;
  std::vector<int> S2, S3, S;

  Rat p_total, p_L, p_1, p_2, p_3;
  Rat p_1l, p_1s, p_2l, p_2s, p_3l, p_3s;
  Rat p_2t, p_2h, p_3t, p_3h, p_Lt, p_Lh;  // t: height <= 1/2, h: taller

  double v_L = 0, v_1 = 0, v_2 = 0, v_3 = 0;
  double v_1s = 0, v_2s = 0, v_3s = 0;
  // stacking extents of the l-classes: total height of I1l, total width of
  // I2l, total depth of I3l
  double h_1l = 0, w_2l = 0, d_3l = 0;
};

// mu must lie in (0, 1/2); throws PreconditionError otherwise.
Classification classify_items(const Instance& inst, double mu);

std::string classification_json(const Classification& c);

// delta for the medium-item deletion: candidates delta_1 = eps,
// delta_{i+1} = delta_i^10 (clamped below by floor), k = ceil(2/eps) bands
// [delta^10, delta); returns the delta whose band catches the least total
// profit of item widths or depths (ties: the largest such delta). Pigeonhole
// gives band_profit <= eps * p(items).
struct DeltaChoice {
  double delta = 0;
  Rat band_profit;
};

DeltaChoice choose_delta(const std::vector<Item>& items, double eps, double floor = 1e-6);

// width/depth classes at delta; items with width or depth inside the deleted
// band [max(delta^10, floor), delta) land in medium and take no other class.
// Pass the same floor as choose_delta so the band matches the one it priced.
struct WidthDepthClasses {
  std::vector<int> big, wide, lng, small, medium;
};

WidthDepthClasses big_wide_long_small(const std::vector<Item>& items, double delta,
                                      double floor = 1e-6);

}  // namespace cubik
