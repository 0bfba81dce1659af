#include "cubik/volpack.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace cubik {

namespace {

void sort_by_height(std::vector<OrientedItem>& v) {
  std::stable_sort(v.begin(), v.end(), [](const OrientedItem& a, const OrientedItem& b) {
    if (a.h != b.h) return a.h > b.h;
    return a.id < b.id;
  });
}

// Maximal height-sorted prefixes of total base area <= w*d/2, each packed
// whole by steinberg_pack. Within a class one footprint axis stays at or
// below half the base, so the area condition reduces to the w*d/2 budget.
void pack_prefix_layers(double w, double d, std::vector<OrientedItem> cls,
                        std::vector<PackLayer>& out) {
  sort_by_height(cls);
  std::size_t at = 0;
  while (at < cls.size()) {
    std::vector<Rect> rects;
    double area = 0;
    std::size_t end = at;
    while (end < cls.size()) {
      const double a = cls[end].w * cls[end].d;
      if (!rects.empty() && area + a > w * d / 2) break;
      rects.push_back(Rect{cls[end].id, cls[end].w, cls[end].d, cls[end].profit});
      area += a;
      ++end;
    }
    PackLayer layer;
    layer.height = cls[at].h;
    layer.rects = steinberg_pack(Region2D{w, d}, rects);
    out.push_back(std::move(layer));
    at = end;
  }
}

// Big-base items two per layer, side by side along the half-sized axis.
void pack_pair_layers(std::vector<OrientedItem> cls, bool along_width,
                      std::vector<PackLayer>& out) {
  sort_by_height(cls);
  for (std::size_t i = 0; i < cls.size(); i += 2) {
    PackLayer layer;
    layer.height = cls[i].h;
    layer.rects.push_back(RectPlacement{cls[i].id, 0, 0, false});
    if (i + 1 < cls.size()) {
      const double ox = along_width ? cls[i].w : 0;
      const double oy = along_width ? 0 : cls[i].d;
      layer.rects.push_back(RectPlacement{cls[i + 1].id, ox, oy, false});
    }
    out.push_back(std::move(layer));
  }
}

}  // namespace

LayeredPacking layers_pack(double base_w, double base_d, const std::vector<OrientedItem>& items) {
  std::vector<OrientedItem> w1, w2, d1, d2;
  for (const OrientedItem& it : items) {
    if (it.w > base_w + kTau || it.d > base_d + kTau) {
      throw PreconditionError("layers_pack: item " + std::to_string(it.id) +
                              " exceeds the base");
    }
    const bool narrow = it.w <= base_w / 2 + kTau;
    const bool shallow = it.d <= base_d / 2 + kTau;
    if (!narrow && !shallow) {
      throw PreconditionError("layers_pack: item " + std::to_string(it.id) +
                              " is wider than half the base in both axes");
    }
    const bool small_base = it.w * it.d <= base_w * base_d / 6 + kTau;
    if (narrow) {
      (small_base ? w1 : w2).push_back(it);
    } else {
      (small_base ? d1 : d2).push_back(it);
    }
  }

  LayeredPacking res;
  pack_prefix_layers(base_w, base_d, std::move(w1), res.layers);
  pack_pair_layers(std::move(w2), /*along_width=*/true, res.layers);
  pack_prefix_layers(base_w, base_d, std::move(d1), res.layers);
  pack_pair_layers(std::move(d2), /*along_width=*/false, res.layers);

  double z = 0;
  for (PackLayer& layer : res.layers) {
    layer.z = z;
    z += layer.height;
  }
  res.total_height = z;
  return res;
}

Pack3DResult vol_pack_3d(const Box3D& box, const std::vector<OrientedItem>& items, double eps) {
  for (const OrientedItem& it : items) {
    if (it.w > box.w + kTau || it.d > box.d + kTau) {
      throw PreconditionError("vol_pack_3d: item " + std::to_string(it.id) +
                              " exceeds the box footprint");
    }
    if (it.h > eps * box.h + kTau) {
      throw PreconditionError("vol_pack_3d: item " + std::to_string(it.id) +
                              " height exceeds eps*h of the box");
    }
    if (it.w > box.w / 2 + kTau && it.d > box.d / 2 + kTau) {
      throw PreconditionError("vol_pack_3d: item " + std::to_string(it.id) +
                              " is wider than half the box in both axes");
    }
  }
  const LayeredPacking lp = layers_pack(box.w, box.d, items);

  std::map<int, const OrientedItem*> by_id;
  for (const OrientedItem& it : items) by_id[it.id] = &it;

  Pack3DResult res;
  std::size_t cut = lp.layers.size();
  for (std::size_t j = 0; j < lp.layers.size(); ++j) {
    const PackLayer& layer = lp.layers[j];
    if (layer.z + layer.height > box.h + kTau) {
      cut = j;
      break;
    }
    for (const RectPlacement& rp : layer.rects) {
      res.placed.push_back(Placement{rp.id, by_id.at(rp.id)->orient, rp.x, rp.y, layer.z});
    }
  }
  if (cut < lp.layers.size()) {
    std::set<int> dropped;
    for (std::size_t j = cut; j < lp.layers.size(); ++j) {
      for (const RectPlacement& rp : lp.layers[j].rects) dropped.insert(rp.id);
    }
    for (const OrientedItem& it : items) {
      if (dropped.count(it.id)) res.unpacked.push_back(it.id);
    }
  }
  return res;
}

RotVolResult vol_pack_3dr(const Box3D& cube, const std::vector<Item>& items, double eps) {
  const double w = cube.w;
  if (std::abs(cube.d - w) > kTau || std::abs(cube.h - w) > kTau) {
    throw PreconditionError("vol_pack_3dr: box is not cubical");
  }
  const double budget_frac = 7.0 / 24.0 - 5.0 * eps;
  if (budget_frac <= 0) {
    throw PreconditionError("vol_pack_3dr: nonpositive volume budget");
  }
  const double vb = w * w * w;
  const double budget = budget_frac * vb;
  const double unit = eps * eps * w;  // height quantum for the container sizes

  // Thin side up: the orientation with minimal height keeps the two larger
  // dimensions on the footprint, so it is feasible whenever any orientation is.
  std::vector<OrientedItem> oriented;
  oriented.reserve(items.size());
  for (const Item& it : items) {
    bool have = false;
    OrientedItem best{};
    for (Orient o : orientations(it, /*allow_rotation=*/true)) {
      const OrientedItem cand = orient_item(it, o);
      if (!have || cand.h < best.h) {
        best = cand;
        have = true;
      }
    }
    if (!have || best.w > w + kTau || best.d > w + kTau || best.h > unit + kTau) {
      throw PreconditionError("vol_pack_3dr: item " + std::to_string(it.id) +
                              " has no orientation with height at most eps^2*w");
    }
    oriented.push_back(best);
  }

  RotVolResult res;

  // Over budget the lemma no longer applies; keep a profit-density prefix
  // within the budget and report the rest unpacked.
  double vol_all = 0;
  for (const OrientedItem& it : oriented) vol_all += it.volume();
  std::vector<OrientedItem> kept;
  if (vol_all > budget + kTau) {
    std::vector<const OrientedItem*> order;
    order.reserve(oriented.size());
    for (const OrientedItem& it : oriented) order.push_back(&it);
    std::stable_sort(order.begin(), order.end(),
                     [](const OrientedItem* a, const OrientedItem* b) {
                       const double da = a->profit.to_double() / a->volume();
                       const double db = b->profit.to_double() / b->volume();
                       if (da != db) return da > db;
                       return a->id < b->id;
                     });
    std::set<int> keep_ids;
    double acc = 0;
    for (const OrientedItem* p : order) {
      if (acc + p->volume() > budget + kTau) break;
      acc += p->volume();
      keep_ids.insert(p->id);
    }
    for (const OrientedItem& it : oriented) {
      if (keep_ids.count(it.id)) {
        kept.push_back(it);
      } else {
        res.unpacked.push_back(it.id);
      }
    }
  } else {
    kept = oriented;
  }

  std::vector<OrientedItem> t_l, t_s;
  for (const OrientedItem& it : kept) {
    if (it.w > w / 2 + kTau && it.d > w / 2 + kTau) {
      t_l.push_back(it);
    } else {
      t_s.push_back(it);
    }
  }

  const LayeredPacking lp = layers_pack(w, w, t_s);
  double v_ts = 0;
  for (const OrientedItem& it : t_s) v_ts += it.volume();

  std::map<int, const OrientedItem*> by_id;
  for (const OrientedItem& it : kept) by_id[it.id] = &it;
  for (const PackLayer& layer : lp.layers) {
    for (const RectPlacement& rp : layer.rects) {
      res.placed.push_back(Placement{rp.id, by_id.at(rp.id)->orient, rp.x, rp.y, layer.z});
    }
  }

  // Pad by 2*eps*w and round down to the height quantum; the pad dominates
  // the rounding loss, so the layers stay covered. The kTau nudges keep the
  // quantization exact when the ratio sits one ulp off an integer.
  const double h_s = std::floor((lp.total_height + 2 * eps * w) / unit + kTau) * unit;
  res.base = RotContainer{"steinberg", 0, h_s};

  if (v_ts >= (1.0 / 6.0 - 3.0 * eps) * vb) {
    res.packing_case = 1;
    std::stable_sort(t_l.begin(), t_l.end(), [](const OrientedItem& a, const OrientedItem& b) {
      if (a.w != b.w) return a.w > b.w;
      return a.id < b.id;
    });
    double z = h_s;
    double tot = 0;
    for (const OrientedItem& it : t_l) {
      res.placed.push_back(Placement{it.id, it.orient, 0, 0, z});
      z += it.h;
      tot += it.h;
    }
    res.top = RotContainer{"stack", h_s, std::ceil(tot / unit - kTau) * unit};
    return res;
  }

  res.packing_case = 2;
  // eps*w of height is held back so the container height can round up to the
  // quantum; the big-base items hang from front faces in the space above.
  const double h_l = w - h_s - eps * w;
  std::vector<Rect> fronts;
  fronts.reserve(t_l.size());
  for (const OrientedItem& it : t_l) fronts.push_back(Rect{it.id, it.w, it.h, it.profit});
  const std::vector<RectPlacement> rps =
      pack_sheets(Region2D{w, h_l}, fronts, 2 * eps * eps);
  for (const RectPlacement& rp : rps) {
    const OrientedItem& oi = *by_id.at(rp.id);
    Orient o = oi.orient;
    if (rp.rotated) {
      // Width and height trade places: resolve the tag with dims (h, d, w)
      // relative to the thin-side-up choice against the original item. The
      // dims are exact copies of the item's, so equality comparison is safe.
      const Item* orig = nullptr;
      for (const Item& it : items) {
        if (it.id == oi.id) {
          orig = &it;
          break;
        }
      }
      bool resolved = false;
      for (Orient cand : orientations(*orig, true)) {
        const Dims dd = oriented_dims(*orig, cand);
        if (dd.w == oi.h && dd.d == oi.d && dd.h == oi.w) {
          o = cand;
          resolved = true;
          break;
        }
      }
      if (!resolved) throw std::logic_error("vol_pack_3dr: no rotated orientation tag");
    }
    res.placed.push_back(Placement{rp.id, o, rp.x, 0, h_s + rp.y});
  }
  res.top = RotContainer{"lcont", h_s, std::ceil(h_l / unit - kTau) * unit};
  return res;
}

}  // namespace cubik
