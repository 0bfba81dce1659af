#pragma once

#include <string>
#include <vector>

#include "cubik/geometry.h"
#include "cubik/subroutines.h"

namespace cubik {

struct PackLayer {
  double z = 0;
  double height = 0;                 // height of the tallest item in the layer
  std::vector<RectPlacement> rects;  // footprints on the base, ids = item ids
};

struct LayeredPacking {
  std::vector<PackLayer> layers;
  double total_height = 0;  // sum of layer heights
};

// Packs items in horizontal layers over a base_w x base_d base. Every item
// must fit the base and have w <= base_w/2 or d <= base_d/2 (else
// PreconditionError). Items split into four classes: the half-width and
// half-depth groups, each divided at base area w*d/6. Small-base classes are
// packed through steinberg_pack in maximal height-sorted prefixes of total
// base area <= w*d/2; big-base classes are paired side by side, two per
// layer. Achieved height <= 4*h_max + 3*v(S)/(w*d).
LayeredPacking layers_pack(double base_w, double base_d, const std::vector<OrientedItem>& items);

// Stacks the layers_pack layers inside the box bottom-up. Requires every
// item within the box, h <= eps * box height, and w <= w_B/2 or d <= d_B/2.
// All items are placed whenever v(T) <= (1/3 - 2*eps) * v(box); otherwise
// the prefix of layers that fits the box height is kept and the items of the
// remaining layers come back unpacked.
Pack3DResult vol_pack_3d(const Box3D& box, const std::vector<OrientedItem>& items, double eps);

struct RotContainer {
  std::string kind;   // "steinberg", "stack" or "lcont"
  double z = 0;       // bottom face offset inside the box
  double height = 0;  // integral multiple of eps^2 * w
};

struct RotVolResult {
  std::vector<Placement> placed;
  std::vector<int> unpacked;  // item ids, input order
  int packing_case = 0;       // 1: big-base items stacked on top, 2: L-shaped region on top
  RotContainer base;          // layered region at the bottom
  RotContainer top;           // stack (case 1) or L-container (case 2)
  bool all_placed() const { return unpacked.empty(); }
};

// Volume packer with rotations for a cubical box of side w. Every item needs
// an orientation with footprint within the base and height <= eps^2*w; items
// are oriented thin side up. Items whose footprint exceeds w/2 in both axes
// go above the layered packing of the rest: stacked one per layer when the
// layered part holds at least (1/6 - 3*eps)*v(B), hung in an L-shaped region
// via pack_sheets otherwise. All items are placed whenever
// v(T) <= (7/24 - 5*eps)*v(B); over budget a profit-density prefix is packed
// and the rest reported unpacked. Both container heights are integral
// multiples of eps^2*w. Throws PreconditionError for a non-cubical box or
// eps >= 7/120 (the volume budget vanishes).
RotVolResult vol_pack_3dr(const Box3D& cube, const std::vector<Item>& items, double eps);

}  // namespace cubik
