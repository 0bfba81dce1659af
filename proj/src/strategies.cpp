#include "cubik/strategies.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cubik/gap.h"
#include "cubik/subroutines.h"
#include "cubik/volpack.h"

namespace cubik {
namespace {

using nlohmann::json;

double ceil_mult(double x, double unit) {
  if (x <= 0) return 0;
  return std::ceil(x / unit - kTau) * unit;
}

double floor_mult(double x, double unit) {
  if (x <= 0) return 0;
  return std::floor(x / unit + kTau) * unit;
}

double item_volume(const Item& it) { return it.w * it.d * it.h; }

double items_volume(const std::vector<Item>& items) {
  double v = 0;
  for (const auto& it : items) v += item_volume(it);
  return v;
}

using ItemIndex = std::unordered_map<int, const Item*>;

ItemIndex index_items(const std::vector<Item>& items) {
  ItemIndex idx;
  for (const auto& it : items) idx.emplace(it.id, &it);
  return idx;
}

Rat placements_profit(const std::vector<Placement>& ps, const ItemIndex& idx) {
  Rat total;
  for (const auto& p : ps) total = total + idx.at(p.item_id)->profit;
  return total;
}

std::vector<Item> items_by_ids(const std::vector<Item>& all, const std::vector<int>& ids) {
  ItemIndex idx = index_items(all);
  std::vector<Item> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(*idx.at(id));
  return out;
}

// profit per volume descending, ties by id
std::vector<Item> density_sorted(std::vector<Item> items) {
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    double da = a.profit.to_double() / std::max(item_volume(a), 1e-300);
    double db = b.profit.to_double() / std::max(item_volume(b), 1e-300);
    if (da != db) return da > db;
    return a.id < b.id;
  });
  return items;
}

// maximal prefix whose cumulative volume stays within the budget
std::vector<Item> volume_prefix(const std::vector<Item>& sorted, double budget) {
  std::vector<Item> out;
  double used = 0;
  for (const auto& it : sorted) {
    double v = item_volume(it);
    if (used + v > budget + kTau) break;
    used += v;
    out.push_back(it);
  }
  return out;
}

// profit per height descending, ties by id; prefix bounded by total height
std::vector<Item> height_prefix(std::vector<Item> items, double budget) {
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    double da = a.profit.to_double() / std::max(a.h, 1e-300);
    double db = b.profit.to_double() / std::max(b.h, 1e-300);
    if (da != db) return da > db;
    return a.id < b.id;
  });
  std::vector<Item> out;
  double used = 0;
  for (const auto& it : items) {
    if (used + it.h > budget + kTau) break;
    used += it.h;
    out.push_back(it);
  }
  return out;
}

void require_unit_knapsack(const Instance& inst, const char* who) {
  if (std::abs(inst.knapsack.side - 1.0) > kTau) {
    throw PreconditionError(std::string(who) + ": requires a unit knapsack; normalize first");
  }
}

StrategyResult finish(std::vector<Placement> placements, std::vector<Container> layout,
                      std::string label, const ItemIndex& idx) {
  StrategyResult r;
  r.solution.placements = std::move(placements);
  r.solution.profit = placements_profit(r.solution.placements, idx);
  r.solution.provenance = label;
  r.layout = std::move(layout);
  r.label = std::move(label);
  return r;
}

StrategyResult skipped(std::string label, std::string note) {
  StrategyResult r;
  r.applicable = false;
  r.label = std::move(label);
  r.note = std::move(note);
  r.solution.provenance = r.label;
  return r;
}

// ---- shelf-of-stacks singleton layout ------------------------------------

struct ShelfPack {
  std::vector<Placement> placements;
  std::vector<Container> containers;
};

ShelfPack shelf_singletons(const Box3D& bounds, std::vector<Item> items, std::size_t limit) {
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.profit != b.profit) return b.profit < a.profit;
    return a.id < b.id;
  });
  ShelfPack out;
  double x = 0, y = 0, z = 0, row_d = 0, layer_h = 0;
  for (const auto& it : items) {
    if (out.placements.size() >= limit) break;
    if (it.w > bounds.w + kTau || it.d > bounds.d + kTau || it.h > bounds.h + kTau) continue;
    if (x + it.w <= bounds.w + kTau && y + it.d <= bounds.d + kTau &&
        z + it.h <= bounds.h + kTau) {
      // fits the open row
    } else if (y + row_d + it.d <= bounds.d + kTau && z + it.h <= bounds.h + kTau) {
      y += row_d;
      x = 0;
      row_d = 0;
    } else if (z + layer_h + it.h <= bounds.h + kTau) {
      z += layer_h;
      x = 0;
      y = 0;
      row_d = 0;
      layer_h = 0;
    } else {
      continue;
    }
    out.placements.push_back({it.id, Orient::WDH, x, y, z});
    out.containers.push_back({ContainerKind::Stack, Axis::Z, it.w, it.d, it.h, x, y, z, 0.1});
    x += it.w;
    row_d = std::max(row_d, it.d);
    layer_h = std::max(layer_h, it.h);
  }
  return out;
}

// ---- axis permutation -----------------------------------------------------

// Virtual frame for a stacking axis: which global axis carries the virtual
// x/y/z extents. Matches the container frames: the virtual z (height role)
// maps onto `axis` and the remaining global axes span the face in x,y,z
// order.
struct VirtualFrame {
  Axis gx, gy, gz;
};

VirtualFrame virtual_frame(Axis axis) {
  switch (axis) {
    case Axis::X:
      return {Axis::Y, Axis::Z, Axis::X};
    case Axis::Y:
      return {Axis::X, Axis::Z, Axis::Y};
    default:
      return {Axis::X, Axis::Y, Axis::Z};
  }
}

double extent_along(double w, double d, double h, Axis a) {
  switch (a) {
    case Axis::X:
      return w;
    case Axis::Y:
      return d;
    default:
      return h;
  }
}

std::vector<Item> virtual_items(const std::vector<Item>& items, Axis axis) {
  VirtualFrame f = virtual_frame(axis);
  std::vector<Item> out;
  out.reserve(items.size());
  for (const auto& it : items) {
    out.push_back({it.id, extent_along(it.w, it.d, it.h, f.gx), extent_along(it.w, it.d, it.h, f.gy),
                   extent_along(it.w, it.d, it.h, f.gz), it.profit});
  }
  return out;
}

void assign_along(double g[3], Axis a, double v) { g[static_cast<int>(a)] = v; }

Placement placement_to_global(const Placement& p, Axis axis, double z_off) {
  VirtualFrame f = virtual_frame(axis);
  double g[3] = {0, 0, 0};
  assign_along(g, f.gx, p.x);
  assign_along(g, f.gy, p.y);
  assign_along(g, f.gz, p.z);
  return {p.item_id, Orient::WDH, g[0], g[1], g[2] + z_off};
}

Container container_to_global(const Container& c, Axis axis, double z_off) {
  VirtualFrame f = virtual_frame(axis);
  double ext[3] = {0, 0, 0};
  double pos[3] = {0, 0, 0};
  assign_along(ext, f.gx, c.w);
  assign_along(ext, f.gy, c.d);
  assign_along(ext, f.gz, c.h);
  assign_along(pos, f.gx, c.x);
  assign_along(pos, f.gy, c.y);
  assign_along(pos, f.gz, c.z);
  Container out = c;
  out.axis = f.gz;  // the split only builds height-role (virtual z) containers
  out.w = ext[0];
  out.d = ext[1];
  out.h = ext[2];
  out.x = pos[0];
  out.y = pos[1];
  out.z = pos[2] + z_off;
  return out;
}

// ---- Steinberg + Stack split of height-thin items --------------------------

struct I1Split {
  std::vector<Placement> placements;
  std::vector<Container> containers;
  std::string label = "empty";
  double total_h = 0;
};

// Bottom-anchored Steinberg (half-base items) plus Stack (big-base items)
// split over a 1x1 base; total occupied height at most max_total.
I1Split i1_split(const std::vector<Item>& items, double eps, double max_total) {
  I1Split out;
  if (items.empty()) return out;
  std::vector<Item> big, small;
  for (const auto& it : items) {
    if (it.w > 0.5 + kTau && it.d > 0.5 + kTau) {
      big.push_back(it);
    } else {
      small.push_back(it);
    }
  }
  double v1 = items_volume(items);
  double v1s = items_volume(small);
  double unit = eps * eps;
  double zcur = 0;

  auto pack_small = [&](double height) {
    if (height <= kTau || small.empty()) return;
    std::vector<Item> fitting;
    double h_max = 0;
    for (const auto& it : small) {
      if (it.h <= height + kTau) {
        fitting.push_back(it);
        h_max = std::max(h_max, it.h);
      }
    }
    if (fitting.empty()) return;
    double eps_hat = std::max(eps * eps, h_max / height);
    auto res = vol_pack_3d(Box3D{1, 1, height}, identity_oriented(fitting), eps_hat);
    if (res.placed.empty()) return;
    for (auto p : res.placed) {
      p.z += zcur;
      out.placements.push_back(p);
    }
    out.containers.push_back(
        {ContainerKind::Steinberg, Axis::Z, 1, 1, height, 0, 0, zcur, eps_hat});
    zcur += height;
  };
  auto pack_big = [&](double height) {
    if (height <= kTau || big.empty()) return;
    std::vector<Item> prefix = height_prefix(big, height);
    if (prefix.empty()) return;
    auto res = stack_pack(Box3D{1, 1, height}, identity_oriented(prefix), Axis::Z);
    if (res.placed.empty()) return;
    for (auto p : res.placed) {
      p.z += zcur;
      out.placements.push_back(p);
    }
    out.containers.push_back({ContainerKind::Stack, Axis::Z, 1, 1, height, 0, 0, zcur, eps});
    zcur += height;
  };

  if (v1 <= 2 * eps + kTau) {
    out.label = "both-8eps";
    double ha = std::min(8 * eps, max_total / 2);
    pack_big(ha);
    double hb = std::min(8 * eps, max_total - zcur);
    pack_small(hb);
  } else {
    double total_target = std::min(floor_mult(3 * v1, unit), max_total);
    double stein_h = 0;
    if (!small.empty()) {
      double raw;
      if (v1 - v1s > eps + kTau) {
        out.label = "stein-by-volume";
        raw = 3 * (1 + 7 * eps * eps) * v1s + unit;
      } else {
        out.label = "stein-trimmed";
        raw = std::max(3 * v1s - 3 * unit, unit);
      }
      stein_h = std::min(ceil_mult(raw, unit), total_target);
    } else {
      out.label = "stack-only";
    }
    pack_small(stein_h);
    pack_big(total_target - zcur);
  }
  out.total_h = zcur;
  return out;
}

std::pair<std::vector<Item>, std::vector<Item>> split_big_small(const std::vector<Item>& items) {
  std::vector<Item> big, small;
  for (const auto& it : items) {
    if (it.w > 0.5 + kTau && it.d > 0.5 + kTau) {
      big.push_back(it);
    } else {
      small.push_back(it);
    }
  }
  return {big, small};
}

std::array<double, 3> sorted_dims(const Item& it) {
  std::array<double, 3> s{it.w, it.d, it.h};
  std::sort(s.begin(), s.end(), std::greater<double>());
  return s;
}

}  // namespace

StrategyResult strat_stack_singletons(const std::vector<Item>& items, std::size_t limit) {
  auto sp = shelf_singletons(Box3D{1, 1, 1}, items, limit);
  return finish(std::move(sp.placements), std::move(sp.containers), "stack-singletons",
                index_items(items));
}

StrategyResult strat_split_stack_steinberg(const Box3D& box, const std::vector<Item>& T,
                                           double eps, bool theory_strict) {
  if (!(eps > 0 && eps < 1)) {
    throw PreconditionError("strat_split_stack_steinberg: eps must lie in (0, 1)");
  }
  if (box.w <= 0 || box.d <= 0 || box.h <= 0) {
    throw PreconditionError("strat_split_stack_steinberg: box must have positive dimensions");
  }
  for (const auto& it : T) {
    if (it.w > box.w + kTau || it.d > box.d + kTau) {
      throw PreconditionError("strat_split_stack_steinberg: item " + std::to_string(it.id) +
                              " footprint exceeds the base");
    }
    if (theory_strict && it.h > eps * eps * eps * eps * box.h + kTau) {
      throw PreconditionError("strat_split_stack_steinberg: item " + std::to_string(it.id) +
                              " height exceeds eps^4 of the box");
    }
  }
  if (items_volume(T) > box.volume() / 4 + kTau) {
    throw PreconditionError(
        "strat_split_stack_steinberg: total volume exceeds a quarter of the box");
  }
  std::vector<Item> big, small;
  for (const auto& it : T) {
    if (it.w > box.w / 2 + kTau && it.d > box.d / 2 + kTau) {
      big.push_back(it);
    } else {
      small.push_back(it);
    }
  }
  std::vector<Placement> placements;
  std::vector<Container> layout;
  double unit = eps * eps * box.h;
  double h_st = 0;
  if (!small.empty()) {
    double v_s = items_volume(small);
    h_st = std::min(ceil_mult(3 * (1 + 7 * eps * eps) * v_s / (box.w * box.d) + unit, unit),
                    box.h);
    double h_max = 0;
    for (const auto& it : small) h_max = std::max(h_max, it.h);
    if (h_max > h_st + kTau) {
      throw PreconditionError(
          "strat_split_stack_steinberg: a half-base item is taller than the bottom container");
    }
    double eps_hat = std::max(eps * eps, h_max / h_st);
    auto res = vol_pack_3d(Box3D{box.w, box.d, h_st}, identity_oriented(small), eps_hat);
    if (!res.placed.empty()) {
      placements.insert(placements.end(), res.placed.begin(), res.placed.end());
      layout.push_back(
          {ContainerKind::Steinberg, Axis::Z, box.w, box.d, h_st, 0, 0, 0, eps_hat});
    }
  }
  double h_stack = box.h - h_st;
  if (!big.empty() && h_stack > kTau) {
    std::vector<Item> prefix = height_prefix(big, h_stack);
    if (!prefix.empty()) {
      auto res = stack_pack(Box3D{box.w, box.d, h_stack}, identity_oriented(prefix), Axis::Z);
      for (auto p : res.placed) {
        p.z += h_st;
        placements.push_back(p);
      }
      if (!res.placed.empty()) {
        layout.push_back(
            {ContainerKind::Stack, Axis::Z, box.w, box.d, h_stack, 0, 0, h_st, eps});
      }
    }
  }
  return finish(std::move(placements), std::move(layout), "split-stack-steinberg",
                index_items(T));
}

StrategyResult strat_simple5(const Instance& inst, double eps, double mu) {
  require_unit_knapsack(inst, "strat_simple5");
  ItemIndex idx = index_items(inst.items);
  Classification cls = classify_items(inst, mu);

  std::vector<StrategyResult> candidates;
  {
    std::vector<Item> large = items_by_ids(inst.items, cls.L);
    auto sp = shelf_singletons(Box3D{1, 1, 1}, large, large.size());
    candidates.push_back(
        finish(std::move(sp.placements), std::move(sp.containers), "simple5/singletons", idx));
  }
  const std::vector<int>* classes[3] = {&cls.I1, &cls.I2, &cls.I3};
  const Axis axes[3] = {Axis::Z, Axis::X, Axis::Y};
  for (int i = 0; i < 3; ++i) {
    std::vector<Item> pool = items_by_ids(inst.items, *classes[i]);
    if (pool.empty()) continue;
    std::vector<Item> prefix = volume_prefix(density_sorted(pool), 0.25);
    if (prefix.empty()) continue;
    std::string label = "simple5/split-" + std::to_string(i + 1);
    try {
      StrategyResult sub =
          strat_split_stack_steinberg(Box3D{1, 1, 1}, virtual_items(prefix, axes[i]), eps);
      std::vector<Placement> placements;
      std::vector<Container> layout;
      for (const auto& p : sub.solution.placements) {
        placements.push_back(placement_to_global(p, axes[i], 0));
      }
      for (const auto& c : sub.layout) layout.push_back(container_to_global(c, axes[i], 0));
      candidates.push_back(finish(std::move(placements), std::move(layout), label, idx));
    } catch (const PreconditionError&) {
      continue;  // class outside the split's feasible regime; other branches stand
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[best].solution.profit < candidates[i].solution.profit) best = i;
  }
  return candidates[best];
}

StrategyResult strat_I1_pack(const std::vector<Item>& items_I1, double eps) {
  ItemIndex idx = index_items(items_I1);
  if (items_I1.empty()) {
    return finish({}, {}, "i1-pack/empty", idx);
  }
  // branch (a): density prefix of the half-base items, full-height container
  StrategyResult a = finish({}, {}, "i1-pack/stein-prefix", idx);
  {
    auto [big, small] = split_big_small(items_I1);
    (void)big;
    std::vector<Item> prefix = volume_prefix(density_sorted(small), 1.0 / 3 - 2 * eps);
    if (!prefix.empty()) {
      double h_max = 0;
      for (const auto& it : prefix) h_max = std::max(h_max, it.h);
      double eps_hat = std::max(eps, h_max);
      auto res = vol_pack_3d(Box3D{1, 1, 1}, identity_oriented(prefix), eps_hat);
      std::vector<Container> layout;
      if (!res.placed.empty()) {
        layout.push_back({ContainerKind::Steinberg, Axis::Z, 1, 1, 1, 0, 0, 0, eps_hat});
      }
      a = finish(std::move(res.placed), std::move(layout), "i1-pack/stein-prefix", idx);
    }
  }
  // branch (b): volume-dependent Steinberg + Stack split
  I1Split split = i1_split(items_I1, eps, 1.0);
  StrategyResult b = finish(std::move(split.placements), std::move(split.containers),
                            "i1-pack/" + split.label, idx);
  return (b.solution.profit > a.solution.profit) ? b : a;
}

StrategyResult strat_combined_fourth(const Instance& inst, double eps, double mu) {
  require_unit_knapsack(inst, "strat_combined_fourth");
  ItemIndex idx = index_items(inst.items);
  Classification cls = classify_items(inst, mu);
  if (cls.v_1 > 1.0 / 6 + kTau) {
    return skipped("combined-fourth/skipped", "height-thin volume v1 exceeds 1/6");
  }
  I1Split bottom = i1_split(items_by_ids(inst.items, cls.I1), eps, 0.5);
  double z0 = std::max(bottom.total_h, eps * eps);
  double H = 1 - z0;

  struct Top {
    std::vector<Placement> placements;
    std::vector<Container> containers;
    Rat profit;
    std::string label = "none";
  };
  std::vector<Top> tops;
  const std::vector<int>* classes[2] = {&cls.S2, &cls.S3};
  const Axis axes[2] = {Axis::X, Axis::Y};
  const char* names[2] = {"s2-split", "s3-split"};
  for (int i = 0; i < 2; ++i) {
    std::vector<Item> pool = items_by_ids(inst.items, *classes[i]);
    if (pool.empty()) continue;
    std::vector<Item> prefix = volume_prefix(density_sorted(pool), H / 4);
    if (prefix.empty()) continue;
    try {
      StrategyResult sub =
          strat_split_stack_steinberg(Box3D{1, H, 1}, virtual_items(prefix, axes[i]), eps);
      Top t;
      for (const auto& p : sub.solution.placements) {
        t.placements.push_back(placement_to_global(p, axes[i], z0));
      }
      for (const auto& c : sub.layout) t.containers.push_back(container_to_global(c, axes[i], z0));
      t.profit = placements_profit(t.placements, idx);
      t.label = names[i];
      tops.push_back(std::move(t));
    } catch (const PreconditionError&) {
      continue;
    }
  }
  {
    std::vector<Item> shorts = items_by_ids(inst.items, cls.S);
    auto sp = shelf_singletons(Box3D{1, 1, H}, shorts, shorts.size());
    Top t;
    for (auto p : sp.placements) {
      p.z += z0;
      t.placements.push_back(p);
    }
    for (auto c : sp.containers) {
      c.z += z0;
      t.containers.push_back(c);
    }
    t.profit = placements_profit(t.placements, idx);
    t.label = "singletons";
    tops.push_back(std::move(t));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < tops.size(); ++i) {
    if (tops[best].profit < tops[i].profit) best = i;
  }
  Top& top = tops[best];
  std::vector<Placement> placements = std::move(bottom.placements);
  placements.insert(placements.end(), top.placements.begin(), top.placements.end());
  std::vector<Container> layout = std::move(bottom.containers);
  layout.insert(layout.end(), top.containers.begin(), top.containers.end());
  return finish(std::move(placements), std::move(layout),
                "combined-fourth/" + bottom.label + "+" + top.label, idx);
}

StrategyResult strat_rot_volume(const Instance& inst, double mu) {
  require_unit_knapsack(inst, "strat_rot_volume");
  if (!inst.allow_rotation) {
    return skipped("rot-volume/skipped", "rotation disabled");
  }
  double eps_hat = std::sqrt(mu);
  if (eps_hat >= 7.0 / 120.0) {
    return skipped("rot-volume/skipped", "volume budget vanishes for sqrt(mu) >= 7/120");
  }
  ItemIndex idx = index_items(inst.items);
  std::vector<Item> thin;
  for (const auto& it : inst.items) {
    if (std::min({it.w, it.d, it.h}) <= mu + kTau) thin.push_back(it);
  }
  std::vector<Item> prefix = volume_prefix(density_sorted(thin), 7.0 / 24 - 5 * eps_hat);
  if (prefix.empty()) {
    return finish({}, {}, "rot-volume/empty", idx);
  }
  RotVolResult res = vol_pack_3dr(Box3D{1, 1, 1}, prefix, eps_hat);
  std::vector<Placement> base_part, top_part;
  double top_z = res.top.z;
  for (const auto& p : res.placed) {
    if (res.top.height > kTau && p.z >= top_z - kTau) {
      top_part.push_back(p);
    } else {
      base_part.push_back(p);
    }
  }
  std::vector<Container> layout;
  if (!base_part.empty()) {
    layout.push_back({ContainerKind::Steinberg, Axis::Z, 1, 1,
                      std::min(res.base.height, 1.0 - res.base.z), 0, 0, res.base.z, eps_hat});
  }
  std::string label = "rot-volume/base-only";
  if (!top_part.empty()) {
    double top_h = std::min(res.top.height, 1.0 - top_z);
    if (res.top.kind == "stack") {
      layout.push_back({ContainerKind::Stack, Axis::Z, 1, 1, top_h, 0, 0, top_z, eps_hat});
      label = "rot-volume/stacked-top";
    } else {
      double e = eps_hat;
      for (const auto& p : top_part) {
        const Item& it = *idx.at(p.item_id);
        e = std::max(e, oriented_dims(it, p.orient).h / std::max(top_h, kTau));
      }
      layout.push_back({ContainerKind::LCont, Axis::Y, 1, 1, top_h, 0, 0, top_z, std::min(e, 1.0)});
      label = "rot-volume/hung-top";
    }
  }
  std::vector<Placement> placements = std::move(base_part);
  placements.insert(placements.end(), top_part.begin(), top_part.end());
  return finish(std::move(placements), std::move(layout), label, idx);
}

StrategyResult strat_rot_uniform_density(const Instance& inst, double mu) {
  require_unit_knapsack(inst, "strat_rot_uniform_density");
  if (!inst.allow_rotation) {
    return skipped("rot-uniform/skipped", "rotation disabled");
  }
  ItemIndex idx = index_items(inst.items);
  std::vector<Item> large, slabs, rest;
  for (const auto& it : inst.items) {
    auto s = sorted_dims(it);
    if (s[2] > mu + kTau) {
      large.push_back(it);
    } else if (s[1] > 0.5 + kTau) {
      slabs.push_back(it);
    } else {
      rest.push_back(it);
    }
  }
  std::vector<StrategyResult> candidates;
  {
    auto sp = shelf_singletons(Box3D{1, 1, 1}, large, large.size());
    candidates.push_back(
        finish(std::move(sp.placements), std::move(sp.containers), "rot-uniform/singletons", idx));
  }
  if (!slabs.empty()) {
    Container c{ContainerKind::LCont, Axis::Y, 1, 1, 1, 0, 0, 0, mu};
    auto cp = pack_into_container(c, slabs, true);
    candidates.push_back(finish(std::move(cp.placements), {c}, "rot-uniform/sheets", idx));
  }
  if (!rest.empty()) {
    Container c{ContainerKind::Steinberg, Axis::Z, 1, 1, 1, 0, 0, 0, mu};
    auto cp = pack_into_container(c, rest, true);
    candidates.push_back(finish(std::move(cp.placements), {c}, "rot-uniform/volume", idx));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[best].solution.profit < candidates[i].solution.profit) best = i;
  }
  return candidates[best];
}

std::vector<std::string> portfolio_strategy_names() {
  return {"stack-singletons", "simple5",    "i1-pack",
          "combined-fourth",  "rot-volume", "rot-uniform"};
}

namespace {

// Re-solves the item-to-container assignment of a validated strategy result
// with the GAP solver and repacks; the incumbent is kept unless the repack
// strictly improves the profit.
bool gap_reoptimize(StrategyResult& r, const Instance& scaled, long long node_limit) {
  if (r.layout.empty() || scaled.items.empty()) return false;
  GapInstance g;
  try {
    g = build_gap_instance(r.layout, scaled.items, scaled.allow_rotation);
  } catch (const PreconditionError&) {
    return false;
  }
  GapResult res = (g.n() <= 40 && g.k() <= 12) ? solve_gap_exact(g, node_limit)
                                               : solve_gap_greedy(g);
  std::vector<std::vector<Item>> chosen(g.k());
  for (std::size_t i = 0; i < scaled.items.size(); ++i) {
    int j = res.assign[i];
    if (j >= 0) chosen[static_cast<std::size_t>(j)].push_back(scaled.items[i]);
  }
  std::vector<Placement> placements;
  for (std::size_t j = 0; j < chosen.size(); ++j) {
    if (chosen[j].empty()) continue;
    auto cp = pack_into_container(r.layout[j], chosen[j], scaled.allow_rotation);
    placements.insert(placements.end(), cp.placements.begin(), cp.placements.end());
  }
  ItemIndex idx = index_items(scaled.items);
  Rat profit = placements_profit(placements, idx);
  if (!(profit > r.solution.profit)) return false;
  PackingSolution candidate;
  candidate.placements = std::move(placements);
  candidate.profit = profit;
  candidate.provenance = r.solution.provenance;
  if (!validate_packing(scaled.knapsack, candidate, scaled.items, scaled.allow_rotation).ok()) {
    return false;
  }
  r.solution = std::move(candidate);
  return true;
}

}  // namespace

PackingSolution portfolio_solve(const Instance& inst, const PortfolioConfig& config) {
  if (inst.knapsack.side <= 0) {
    throw std::invalid_argument("portfolio_solve: knapsack side must be positive");
  }
  if (!(inst.eps > 0 && inst.eps < 1)) {
    throw std::invalid_argument("portfolio_solve: eps must lie in (0, 1)");
  }
  double side = inst.knapsack.side;
  Instance scaled = inst;
  scaled.knapsack.side = 1;
  if (std::abs(side - 1.0) > kTau) {
    for (auto& it : scaled.items) {
      it.w /= side;
      it.d /= side;
      it.h /= side;
    }
  }
  double eps = scaled.eps;
  double mu = instance_mu(scaled);
  Classification cls = classify_items(scaled, mu);

  using Runner = std::function<StrategyResult()>;
  std::vector<std::pair<std::string, Runner>> runners = {
      {"stack-singletons",
       [&] { return strat_stack_singletons(scaled.items, scaled.items.size()); }},
      {"simple5", [&] { return strat_simple5(scaled, eps, mu); }},
      {"i1-pack", [&] { return strat_I1_pack(items_by_ids(scaled.items, cls.I1), eps); }},
      {"combined-fourth", [&] { return strat_combined_fourth(scaled, eps, mu); }},
      {"rot-volume", [&] { return strat_rot_volume(scaled, mu); }},
      {"rot-uniform", [&] { return strat_rot_uniform_density(scaled, mu); }},
  };

  struct Evaluated {
    bool usable = false;
    bool improved = false;
    StrategyResult result;
    std::string note;
  };
  std::vector<Evaluated> done(runners.size());
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < runners.size(); ++i) {
    if (config.only.empty() ||
        std::find(config.only.begin(), config.only.end(), runners[i].first) != config.only.end()) {
      active.push_back(i);
    }
  }
  auto evaluate = [&](std::size_t i) {
    Evaluated& e = done[i];
    try {
      e.result = runners[i].second();
    } catch (const std::exception& ex) {
      e.note = ex.what();
      return;
    }
    if (!e.result.applicable) {
      e.note = e.result.note.empty() ? "not applicable" : e.result.note;
      return;
    }
    if (!validate_packing(scaled.knapsack, e.result.solution, scaled.items, scaled.allow_rotation)
             .ok() ||
        !check_container_layout(e.result.layout, scaled.knapsack)) {
      e.note = "result failed validation";
      return;
    }
    if (config.use_gap) {
      e.improved = gap_reoptimize(e.result, scaled, config.gap_node_limit);
    }
    e.usable = true;
  };
  const std::size_t workers =
      std::min(static_cast<std::size_t>(std::max(config.threads, 1)), active.size());
  if (workers > 1) {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t j = next++; j < active.size(); j = next++) evaluate(active[j]);
      });
    }
    for (auto& th : pool) th.join();
  } else {
    for (std::size_t j : active) evaluate(j);
  }

  // reduce in strategy order so the outcome is independent of scheduling
  std::map<std::string, std::string> notes;
  std::optional<StrategyResult> best;
  bool gap_improved = false;
  for (std::size_t i : active) {
    Evaluated& e = done[i];
    if (!e.usable) {
      notes[runners[i].first] = e.note;
      continue;
    }
    if (!best || best->solution.profit < e.result.solution.profit) {
      best = std::move(e.result);
      gap_improved = e.improved;
    }
  }

  PackingSolution out;
  json prov;
  prov["strategy"] = best ? best->label : "none";
  prov["gap_reopt"] = gap_improved;
  for (const auto& [name, note] : notes) prov["notes"][name] = note;
  if (best) {
    out.placements = std::move(best->solution.placements);
    out.profit = best->solution.profit;
    std::vector<Container> layout = std::move(best->layout);
    if (std::abs(side - 1.0) > kTau) {
      for (auto& p : out.placements) {
        p.x *= side;
        p.y *= side;
        p.z *= side;
      }
      for (auto& c : layout) {
        c.w *= side;
        c.d *= side;
        c.h *= side;
        c.x *= side;
        c.y *= side;
        c.z *= side;
      }
    }
    prov["containers"] = json::parse(container_summary(layout));
  } else {
    prov["containers"] = json::array();
  }
  out.provenance = prov.dump();
  return out;
}

}  // namespace cubik
