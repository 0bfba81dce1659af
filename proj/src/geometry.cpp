#include "cubik/geometry.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace cubik {

namespace {
constexpr std::array<const char*, 6> kNames = {"wdh", "whd", "dwh", "dhw", "hwd", "hdw"};
}

const char* orient_name(Orient o) { return kNames[static_cast<int>(o)]; }

Orient orient_from_name(const std::string& s) {
  for (int i = 0; i < 6; ++i)
    if (s == kNames[i]) return static_cast<Orient>(i);
  throw std::invalid_argument("unknown orientation tag: " + s);
}

Dims oriented_dims(const Item& it, Orient o) {
  auto pick = [&](char c) {
    switch (c) {
      case 'w': return it.w;
      case 'd': return it.d;
      default: return it.h;
    }
  };
  const char* n = orient_name(o);
  return Dims{pick(n[0]), pick(n[1]), pick(n[2])};
}

std::vector<Orient> orientations(const Item& it, bool allow_rotation) {
  if (!allow_rotation) return {Orient::WDH};
  std::vector<Orient> out;
  std::vector<Dims> seen;
  for (int i = 0; i < 6; ++i) {
    Orient o = static_cast<Orient>(i);
    Dims d = oriented_dims(it, o);
    bool dup = false;
    for (const Dims& s : seen)
      if (s.w == d.w && s.d == d.d && s.h == d.h) {
        dup = true;
        break;
      }
    if (!dup) {
      seen.push_back(d);
      out.push_back(o);
    }
  }
  return out;
}

OrientedItem orient_item(const Item& it, Orient o) {
  Dims d = oriented_dims(it, o);
  return OrientedItem{it.id, o, d.w, d.d, d.h, it.profit};
}

std::vector<OrientedItem> identity_oriented(const std::vector<Item>& items) {
  std::vector<OrientedItem> out;
  out.reserve(items.size());
  for (const Item& it : items) out.push_back(orient_item(it, Orient::WDH));
  return out;
}

double default_mu(double eps) { return std::min(eps * eps * eps * eps, 1e-3); }

double instance_mu(const Instance& inst) {
  return inst.mu > 0 ? inst.mu : default_mu(inst.eps);
}

ValidationReport validate_packing(const Knapsack& k, const PackingSolution& sol,
                                  const std::vector<Item>& items, bool allow_rotation) {
  ValidationReport rep;
  std::map<int, const Item*> by_id;
  for (const Item& it : items) by_id[it.id] = &it;

  struct Box {
    int id;
    double x1, y1, z1, x2, y2, z2;
  };
  std::vector<Box> boxes;
  std::map<int, int> seen;
  for (const Placement& p : sol.placements) {
    auto it = by_id.find(p.item_id);
    if (it == by_id.end()) {
      rep.violations.push_back({Violation::UnknownItem,
                                "placement references unknown item id " + std::to_string(p.item_id)});
      continue;
    }
    if (++seen[p.item_id] > 1) {
      rep.violations.push_back({Violation::DuplicateItem,
                                "item " + std::to_string(p.item_id) + " placed more than once"});
      continue;
    }
    if (!allow_rotation && p.orient != Orient::WDH) {
      rep.violations.push_back({Violation::RotationDisallowed,
                                "item " + std::to_string(p.item_id) +
                                    " uses orientation " + orient_name(p.orient) +
                                    " but rotation is disabled"});
    }
    Dims d = oriented_dims(*it->second, p.orient);
    Box b{p.item_id, p.x, p.y, p.z, p.x + d.w, p.y + d.d, p.z + d.h};
    double s = k.side;
    if (b.x1 < -kTau || b.y1 < -kTau || b.z1 < -kTau || b.x2 > s + kTau || b.y2 > s + kTau ||
        b.z2 > s + kTau) {
      rep.violations.push_back({Violation::OutOfBounds,
                                "item " + std::to_string(p.item_id) + " extends outside the knapsack"});
    }
    boxes.push_back(b);
  }

  for (std::size_t i = 0; i < boxes.size(); ++i)
    for (std::size_t j = i + 1; j < boxes.size(); ++j) {
      const Box& a = boxes[i];
      const Box& b = boxes[j];
      double px = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
      double py = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
      double pz = std::min(a.z2, b.z2) - std::max(a.z1, b.z1);
      if (px > kTau && py > kTau && pz > kTau) {
        rep.violations.push_back({Violation::Overlap,
                                  "items " + std::to_string(a.id) + " and " + std::to_string(b.id) +
                                      " overlap (penetration " + std::to_string(std::min({px, py, pz})) +
                                      ")"});
      }
    }
  return rep;
}

Rat solution_profit(const PackingSolution& sol, const std::vector<Item>& items) {
  std::map<int, const Item*> by_id;
  for (const Item& it : items) by_id[it.id] = &it;
  Rat p;
  for (const Placement& pl : sol.placements) {
    auto it = by_id.find(pl.item_id);
    if (it != by_id.end()) p += it->second->profit;
  }
  return p;
}

}  // namespace cubik
