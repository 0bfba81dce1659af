#pragma once

#include <array>
#include <string>
#include <vector>

#include "cubik/rational.h"

namespace cubik {

inline constexpr double kTau = 1e-9;

struct Item {
  int id = 0;
  double w = 0, d = 0, h = 0;
  Rat profit;
};

// Orientation tag: letters name which original dimension lands on the
// x (width), y (depth), z (height) axis, in that order.
enum class Orient { WDH, WHD, DWH, DHW, HWD, HDW };

const char* orient_name(Orient o);
Orient orient_from_name(const std::string& s);

struct Dims {
  double w = 0, d = 0, h = 0;
  double volume() const { return w * d * h; }
};

Dims oriented_dims(const Item& it, Orient o);

// Distinct orientations of an item: identity only when rotation is off,
// otherwise all axis permutations with duplicates (equal dimension triples)
// collapsed, keeping the first tag in enum order.
std::vector<Orient> orientations(const Item& it, bool allow_rotation);

struct OrientedItem {
  int id = 0;
  Orient orient = Orient::WDH;
  double w = 0, d = 0, h = 0;
  Rat profit;
  double volume() const { return w * d * h; }
};

OrientedItem orient_item(const Item& it, Orient o);
std::vector<OrientedItem> identity_oriented(const std::vector<Item>& items);

struct Placement {
  int item_id = 0;
  Orient orient = Orient::WDH;
  double x = 0, y = 0, z = 0;
};

struct Knapsack {
  double side = 1.0;
};

struct PackingSolution {
  std::vector<Placement> placements;
  Rat profit;
  std::string provenance;
};

struct Instance {
  Knapsack knapsack;
  bool allow_rotation = false;
  std::vector<Item> items;
  double eps = 0.1;
  double mu = -1;  // <0 selects the default min(eps^4, 1e-3)
};

double default_mu(double eps);
double instance_mu(const Instance& inst);

struct Violation {
  enum Kind {
    UnknownItem,
    DuplicateItem,
    RotationDisallowed,
    OutOfBounds,
    Overlap,
  } kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_packing(const Knapsack& k, const PackingSolution& sol,
                                  const std::vector<Item>& items, bool allow_rotation);

Rat solution_profit(const PackingSolution& sol, const std::vector<Item>& items);

}  // namespace cubik
