#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cubik/geometry.h"
#include "cubik/rational.h"

namespace cubik {

// Thrown when a packing routine is called outside its guaranteed-feasible
// regime in a way that cannot be answered with a partial packing.
struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

struct Rect {
  int id = 0;
  double len = 0;  // extent along x
  double br = 0;   // extent along y
  Rat profit{};
};

struct Region2D {
  double len = 0;
  double br = 0;
};

struct RectPlacement {
  int id = 0;
  double x = 0;
  double y = 0;
  bool rotated = false;  // true: len/br swapped in place
};

struct Pack2DResult {
  std::vector<RectPlacement> placed;
  std::vector<int> unpacked;  // rect ids, input order
  bool all_placed() const { return unpacked.empty(); }
};

struct Box3D {
  double w = 0;
  double d = 0;
  double h = 0;
  double volume() const { return w * d * h; }
};

struct Pack3DResult {
  std::vector<Placement> placed;
  std::vector<int> unpacked;  // item ids
  bool all_placed() const { return unpacked.empty(); }
};

// Shelf packing, rects sorted by breadth (ties by id). Guarantee: if every
// rect has len <= eps*len(region), br <= eps*br(region) and total area
// <= (1-2*eps)*area(region), everything is placed.
Pack2DResult nfdh_2d(const Region2D& region, std::vector<Rect> rects);

// Height-sorted layers over the box base, each layer a maximal prefix that
// nfdh_2d packs completely. Guarantee: all placed when every dimension is at
// most eps times the box dimension and total volume <= (1-3*eps)*v(box).
Pack3DResult nfdh_3d(const Box3D& box, std::vector<OrientedItem> items);

// 2*a(S) <= len*br - max(2*len_max - len, 0) * max(2*br_max - br, 0).
// Throws PreconditionError if a rect exceeds the region in either dimension.
bool steinberg_condition(const Region2D& region, const std::vector<Rect>& rects);

// Complete packing of every rect; requires steinberg_condition. Throws
// PreconditionError when the condition fails.
std::vector<RectPlacement> steinberg_pack(const Region2D& region, std::vector<Rect> rects);

enum class Axis { X, Y, Z };

// Places items at consecutive offsets along `axis` in input order; items past
// the extent are returned unpacked. Throws PreconditionError when an item
// does not fit the box cross-section.
Pack3DResult stack_pack(const Box3D& box, const std::vector<OrientedItem>& items, Axis axis);

// Long-rect packer for the L-shaped free region: stack the longest rects
// bottom-left, rotate the remainder into a right-aligned top row.
// Preconditions (throws PreconditionError naming the violated clause):
// region.len >= region.br, every rect len >= region.len/2, br <= delta*region.br,
// total area <= len*br - len^2/4 - 3*delta*br^2.
std::vector<RectPlacement> pack_sheets(const Region2D& region, std::vector<Rect> rects,
                                       double delta);

}  // namespace cubik
