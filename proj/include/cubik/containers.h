#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubik/geometry.h"
#include "cubik/subroutines.h"

namespace cubik {

enum class ContainerKind { Stack, Area, Volume, Steinberg, LCont };

const char* container_kind_name(ContainerKind k);
const char* axis_name(Axis a);

// A container is an axis-aligned box inside the knapsack together with a
// packing discipline. `axis` selects the variant: the stacking axis for
// Stack, the normal of the packing face for Area and LCont, the
// layer-stacking axis for Steinberg; Volume containers have a single
// variant. In the container's local frame the two remaining axes (in x,y,z
// order) span the packing face and `axis` plays the height role.
struct Container {
  ContainerKind kind = ContainerKind::Stack;
  Axis axis = Axis::Z;
  double w = 0, d = 0, h = 0;  // extents along x, y, z
  double x = 0, y = 0, z = 0;  // min corner inside the knapsack
  double eps = 0.1;
};

// Capacity: Stack the extent along the stacking axis; Area the packing-face
// area; Volume the volume; Steinberg a third of the volume; LCont the face
// area minus a quarter of the squared face width (negative when the face is
// too flat; such containers are rejected at packing time).
double cap(const Container& c);

// Admission size of an item, or nullopt when no allowed orientation meets
// the kind's constraints. With rotation the minimum size over feasible
// orientations is returned (the volume kinds are orientation-invariant).
std::optional<double> f_C(const Container& c, const Item& item, bool allow_rotation);

struct ContainerPacking {
  std::vector<Placement> placements;  // knapsack coordinates
  std::vector<int> dropped;           // item ids, input order
};

// Packs the items with the container's discipline. Caller contract: every
// item admissible and sum of f_C at most cap (inadmissible items raise
// PreconditionError). Prefix selection by profit/size keeps the dropped
// profit at O(eps) of the total: none for Stack, 3*eps Area, 4*eps Volume,
// 9*eps Steinberg, 8*eps LCont.
ContainerPacking pack_into_container(const Container& c, const std::vector<Item>& items,
                                     bool allow_rotation);

// True iff every container lies inside the knapsack and no two overlap in
// their interiors.
bool check_container_layout(const std::vector<Container>& cs, const Knapsack& k);

// Compact JSON array describing a layout, used in solution provenance.
std::string container_summary(const std::vector<Container>& cs);

}  // namespace cubik
