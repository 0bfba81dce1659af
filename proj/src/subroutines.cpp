#include "cubik/subroutines.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cubik {
namespace {

bool br_desc(const Rect& a, const Rect& b) {
  if (a.br != b.br) return a.br > b.br;
  return a.id < b.id;
}

bool len_desc(const Rect& a, const Rect& b) {
  if (a.len != b.len) return a.len > b.len;
  return a.id < b.id;
}

}  // namespace

Pack2DResult nfdh_2d(const Region2D& region, std::vector<Rect> rects) {
  std::stable_sort(rects.begin(), rects.end(), br_desc);
  Pack2DResult out;
  bool open = false;
  double shelf_y = 0, shelf_h = 0, cx = 0;
  for (const Rect& r : rects) {
    if (r.len > region.len + kTau || r.br > region.br + kTau) {
      out.unpacked.push_back(r.id);
      continue;
    }
    if (open && cx + r.len <= region.len + kTau) {
      out.placed.push_back({r.id, cx, shelf_y, false});
      cx += r.len;
      continue;
    }
    const double ny = open ? shelf_y + shelf_h : 0.0;
    if (ny + r.br <= region.br + kTau) {
      open = true;
      shelf_y = ny;
      shelf_h = r.br;
      out.placed.push_back({r.id, 0.0, shelf_y, false});
      cx = r.len;
    } else {
      out.unpacked.push_back(r.id);
    }
  }
  return out;
}

Pack3DResult nfdh_3d(const Box3D& box, std::vector<OrientedItem> items) {
  std::stable_sort(items.begin(), items.end(), [](const OrientedItem& a, const OrientedItem& b) {
    if (a.h != b.h) return a.h > b.h;
    return a.id < b.id;
  });
  Pack3DResult out;
  const Region2D base{box.w, box.d};
  const size_t n = items.size();
  size_t idx = 0;
  double z = 0;
  while (idx < n) {
    const OrientedItem& lead = items[idx];
    if (z + lead.h > box.h + kTau || lead.w > box.w + kTau || lead.d > box.d + kTau) {
      out.unpacked.push_back(lead.id);
      ++idx;
      continue;
    }
    // Grow the layer: the largest prefix of the remaining (height-sorted)
    // items whose footprints nfdh_2d packs completely on the base.
    std::vector<Rect> foot;
    foot.push_back({lead.id, lead.w, lead.d, lead.profit});
    Pack2DResult layer = nfdh_2d(base, foot);
    size_t m = 1;
    while (idx + m < n) {
      const OrientedItem& nxt = items[idx + m];
      foot.push_back({nxt.id, nxt.w, nxt.d, nxt.profit});
      Pack2DResult trial = nfdh_2d(base, foot);
      if (!trial.all_placed()) break;
      layer = std::move(trial);
      ++m;
    }
    for (const RectPlacement& rp : layer.placed) {
      const OrientedItem* src = nullptr;
      for (size_t j = idx; j < idx + m; ++j) {
        if (items[j].id == rp.id) {
          src = &items[j];
          break;
        }
      }
      Placement p;
      p.item_id = src->id;
      p.orient = src->orient;
      p.x = rp.x;
      p.y = rp.y;
      p.z = z;
      out.placed.push_back(p);
    }
    z += lead.h;  // next layer rests on the tallest item of this one
    idx += m;
  }
  return out;
}

bool steinberg_condition(const Region2D& region, const std::vector<Rect>& rects) {
  double lmax = 0, bmax = 0, area = 0;
  for (const Rect& r : rects) {
    if (r.len > region.len + kTau || r.br > region.br + kTau) {
      throw PreconditionError("steinberg_condition: rect " + std::to_string(r.id) +
                              " exceeds the region");
    }
    lmax = std::max(lmax, r.len);
    bmax = std::max(bmax, r.br);
    area += r.len * r.br;
  }
  const double defect =
      std::max(2 * lmax - region.len, 0.0) * std::max(2 * bmax - region.br, 0.0);
  return 2 * area <= region.len * region.br - defect + kTau;
}

Pack3DResult stack_pack(const Box3D& box, const std::vector<OrientedItem>& items, Axis axis) {
  Pack3DResult out;
  double off = 0;
  bool overflow = false;
  for (const OrientedItem& it : items) {
    double ext = 0, c1 = 0, c2 = 0, bext = 0, b1 = 0, b2 = 0;
    switch (axis) {
      case Axis::X: ext = it.w; c1 = it.d; c2 = it.h; bext = box.w; b1 = box.d; b2 = box.h; break;
      case Axis::Y: ext = it.d; c1 = it.w; c2 = it.h; bext = box.d; b1 = box.w; b2 = box.h; break;
      case Axis::Z: ext = it.h; c1 = it.w; c2 = it.d; bext = box.h; b1 = box.w; b2 = box.d; break;
    }
    if (c1 > b1 + kTau || c2 > b2 + kTau) {
      throw PreconditionError("stack_pack: item " + std::to_string(it.id) +
                              " exceeds the box cross-section");
    }
    if (overflow || off + ext > bext + kTau) {
      overflow = true;
      out.unpacked.push_back(it.id);
      continue;
    }
    Placement p;
    p.item_id = it.id;
    p.orient = it.orient;
    switch (axis) {
      case Axis::X: p.x = off; break;
      case Axis::Y: p.y = off; break;
      case Axis::Z: p.z = off; break;
    }
    out.placed.push_back(p);
    off += ext;
  }
  return out;
}

std::vector<RectPlacement> pack_sheets(const Region2D& region, std::vector<Rect> rects,
                                       double delta) {
  const double l = region.len, b = region.br;
  if (l + kTau < b) throw PreconditionError("pack_sheets: region length smaller than breadth");
  double area = 0;
  for (const Rect& r : rects) {
    if (r.len + kTau < l / 2) {
      throw PreconditionError("pack_sheets: rect " + std::to_string(r.id) + " has length < len/2");
    }
    if (r.len > l + kTau) {
      throw PreconditionError("pack_sheets: rect " + std::to_string(r.id) +
                              " has length exceeding the region");
    }
    if (r.br > delta * b + kTau) {
      throw PreconditionError("pack_sheets: rect " + std::to_string(r.id) +
                              " has breadth > delta*br");
    }
    area += r.len * r.br;
  }
  const double cap = l * b - l * l / 4 - 3 * delta * b * b;
  if (area > cap + kTau) throw PreconditionError("pack_sheets: total area exceeds the budget");

  std::stable_sort(rects.begin(), rects.end(), len_desc);
  std::vector<RectPlacement> out;

  // Phase 1: stack upward from the bottom-left corner to the maximum extent.
  size_t k = 0;
  double ycum = 0;
  for (; k < rects.size(); ++k) {
    if (ycum + rects[k].br > b + kTau) break;
    out.push_back({rects[k].id, 0.0, ycum, false});
    ycum += rects[k].br;
  }
  const size_t stacked = k;
  if (k == rects.size()) return out;

  // Phase 2: rotate the remainder and hang it from the top edge, packing
  // right to left. The area budget guarantees this never collides with the
  // stack; the checks below are defensive.
  double xr = l;
  for (; k < rects.size(); ++k) {
    const Rect& r = rects[k];
    if (r.len > b + kTau) throw std::logic_error("pack_sheets: rotated rect exceeds the breadth");
    const double x = xr - r.br;
    const double ylo = b - r.len;
    if (x < -kTau) throw std::logic_error("pack_sheets: ran out of horizontal space");
    for (size_t j = 0; j < stacked; ++j) {
      const double jy0 = out[j].y;
      const double jx1 = rects[j].len;  // out[j] is rects[j]: same sorted order
      const double jy1 = jy0 + rects[j].br;
      const double px = jx1 - x;
      const double py = std::min(jy1, b) - std::max(jy0, ylo);
      if (px > kTau && py > kTau) {
        throw std::logic_error("pack_sheets: rotated rect collides with the stack");
      }
    }
    out.push_back({r.id, x, ylo, true});
    xr = x;
  }
  return out;
}

}  // namespace cubik
