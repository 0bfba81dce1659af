#include "cubik/containers.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "json.hpp"

#include "cubik/volpack.h"

namespace cubik {

const char* container_kind_name(ContainerKind k) {
  switch (k) {
    case ContainerKind::Stack: return "stack";
    case ContainerKind::Area: return "area";
    case ContainerKind::Volume: return "volume";
    case ContainerKind::Steinberg: return "steinberg";
    case ContainerKind::LCont: return "lcont";
  }
  return "?";
}

const char* axis_name(Axis a) {
  switch (a) {
    case Axis::X: return "x";
    case Axis::Y: return "y";
    case Axis::Z: return "z";
  }
  return "?";
}

namespace {

// Local frame: a1, a2 span the packing face (in x,y,z order), a3 is the
// container's special axis.
struct Frame {
  Axis a1, a2, a3;
};

Frame frame_of(Axis special) {
  switch (special) {
    case Axis::X: return {Axis::Y, Axis::Z, Axis::X};
    case Axis::Y: return {Axis::X, Axis::Z, Axis::Y};
    default: return {Axis::X, Axis::Y, Axis::Z};
  }
}

double along(double w, double d, double h, Axis a) {
  switch (a) {
    case Axis::X: return w;
    case Axis::Y: return d;
    default: return h;
  }
}

struct Local3 {
  double e1, e2, e3;
};

Local3 local_dims(const Container& c) {
  const Frame f = frame_of(c.axis);
  return {along(c.w, c.d, c.h, f.a1), along(c.w, c.d, c.h, f.a2), along(c.w, c.d, c.h, f.a3)};
}

Local3 local_extents(const Dims& dd, const Frame& f) {
  return {along(dd.w, dd.d, dd.h, f.a1), along(dd.w, dd.d, dd.h, f.a2),
          along(dd.w, dd.d, dd.h, f.a3)};
}

// Size of one specific orientation, nullopt when it violates the kind's
// admission constraints.
std::optional<double> orient_size(const Container& c, const Local3& l, const Local3& e) {
  switch (c.kind) {
    case ContainerKind::Stack:
      if (e.e1 <= l.e1 + kTau && e.e2 <= l.e2 + kTau) return e.e3;
      return std::nullopt;
    case ContainerKind::Area:
      if (e.e1 <= c.eps * l.e1 + kTau && e.e2 <= c.eps * l.e2 + kTau && e.e3 <= l.e3 + kTau)
        return e.e1 * e.e2;
      return std::nullopt;
    case ContainerKind::Volume:
      if (e.e1 <= c.eps * l.e1 + kTau && e.e2 <= c.eps * l.e2 + kTau &&
          e.e3 <= c.eps * l.e3 + kTau)
        return e.e1 * e.e2 * e.e3;
      return std::nullopt;
    case ContainerKind::Steinberg:
      if (e.e3 <= c.eps * l.e3 + kTau && e.e1 <= l.e1 + kTau && e.e2 <= l.e2 + kTau &&
          (e.e1 <= l.e1 / 2 + kTau || e.e2 <= l.e2 / 2 + kTau))
        return e.e1 * e.e2 * e.e3;
      return std::nullopt;
    case ContainerKind::LCont:
      if (e.e1 >= l.e1 / 2 - kTau && e.e1 <= l.e1 + kTau && e.e2 <= c.eps * l.e2 + kTau &&
          e.e3 >= l.e3 / 2 - kTau && e.e3 <= l.e3 + kTau)
        return e.e1 * e.e2;
      return std::nullopt;
  }
  return std::nullopt;
}

struct Chosen {
  Orient orient = Orient::WDH;
  Dims dims;  // global extents
  double size = 0;
};

std::optional<Chosen> choose_orientation(const Container& c, const Item& it,
                                         bool allow_rotation) {
  const Frame f = frame_of(c.axis);
  const Local3 l = local_dims(c);
  std::optional<Chosen> best;
  for (Orient o : orientations(it, allow_rotation)) {
    const Dims dd = oriented_dims(it, o);
    const auto sz = orient_size(c, l, local_extents(dd, f));
    if (!sz) continue;
    if (!best || *sz < best->size) best = Chosen{o, dd, *sz};
  }
  return best;
}

void validate_container(const Container& c) {
  if (c.w <= 0 || c.d <= 0 || c.h <= 0) {
    throw PreconditionError("pack_into_container: container has a non-positive dimension");
  }
  if (c.kind == ContainerKind::LCont) {
    const Local3 l = local_dims(c);
    if (l.e1 + kTau < l.e2) {
      throw PreconditionError(
          "pack_into_container: L-container face width smaller than face height");
    }
    if (cap(c) <= 0) {
      throw PreconditionError("pack_into_container: L-container capacity is not positive");
    }
  }
}

}  // namespace

double cap(const Container& c) {
  const Local3 l = local_dims(c);
  switch (c.kind) {
    case ContainerKind::Stack: return l.e3;
    case ContainerKind::Area: return l.e1 * l.e2;
    case ContainerKind::Volume: return c.w * c.d * c.h;
    case ContainerKind::Steinberg: return c.w * c.d * c.h / 3;
    case ContainerKind::LCont: return l.e1 * l.e2 - l.e1 * l.e1 / 4;
  }
  return 0;
}

std::optional<double> f_C(const Container& c, const Item& item, bool allow_rotation) {
  const auto best = choose_orientation(c, item, allow_rotation);
  if (!best) return std::nullopt;
  return best->size;
}

ContainerPacking pack_into_container(const Container& c, const std::vector<Item>& items,
                                     bool allow_rotation) {
  validate_container(c);
  const Frame f = frame_of(c.axis);
  const Local3 l = local_dims(c);

  struct Entry {
    const Item* it;
    Chosen ch;
  };
  std::vector<Entry> entries;
  entries.reserve(items.size());
  for (const Item& it : items) {
    auto ch = choose_orientation(c, it, allow_rotation);
    if (!ch) {
      throw PreconditionError("pack_into_container: item " + std::to_string(it.id) +
                              " is not admissible");
    }
    entries.push_back({&it, *ch});
  }

  ContainerPacking out;
  std::set<int> dropped;

  auto to_global = [&](double u, double v, double t, Orient o, int id) {
    double g[3] = {0, 0, 0};
    g[static_cast<int>(f.a1)] = u;
    g[static_cast<int>(f.a2)] = v;
    g[static_cast<int>(f.a3)] = t;
    out.placements.push_back(Placement{id, o, c.x + g[0], c.y + g[1], c.z + g[2]});
  };

  if (c.kind == ContainerKind::Stack) {
    std::vector<OrientedItem> locals;
    locals.reserve(entries.size());
    for (const Entry& e : entries) {
      const Local3 le = local_extents(e.ch.dims, f);
      locals.push_back(OrientedItem{e.it->id, e.ch.orient, le.e1, le.e2, le.e3, e.it->profit});
    }
    const Pack3DResult res = stack_pack(Box3D{l.e1, l.e2, l.e3}, locals, Axis::Z);
    for (const Placement& p : res.placed) to_global(p.x, p.y, p.z, p.orient, p.item_id);
    for (int id : res.unpacked) dropped.insert(id);
  } else {
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
      const double da = a.it->profit.to_double() / a.ch.size;
      const double db = b.it->profit.to_double() / b.ch.size;
      if (da != db) return da > db;
      return a.it->id < b.it->id;
    });
    double threshold = 0;
    switch (c.kind) {
      case ContainerKind::Area:
        threshold = (1 - 2 * c.eps) * l.e1 * l.e2;
        break;
      case ContainerKind::Volume:
        threshold = (1 - 3 * c.eps) * c.w * c.d * c.h;
        break;
      case ContainerKind::Steinberg:
        threshold = (1.0 / 3 - 2 * c.eps) * c.w * c.d * c.h;
        break;
      case ContainerKind::LCont:
        threshold = l.e1 * l.e2 - l.e1 * l.e1 / 4 - 3 * c.eps * l.e2 * l.e2;
        break;
      default:
        break;
    }
    std::size_t m = 0;
    double sum = 0;
    while (m < entries.size() && sum + entries[m].ch.size <= threshold + kTau) {
      sum += entries[m].ch.size;
      ++m;
    }
    for (std::size_t i = m; i < entries.size(); ++i) dropped.insert(entries[i].it->id);

    std::map<int, const Entry*> by_id;
    for (const Entry& e : entries) by_id[e.it->id] = &e;

    if (c.kind == ContainerKind::Area) {
      std::vector<Rect> rects;
      rects.reserve(m);
      for (std::size_t i = 0; i < m; ++i) {
        const Local3 le = local_extents(entries[i].ch.dims, f);
        rects.push_back(Rect{entries[i].it->id, le.e1, le.e2, entries[i].it->profit});
      }
      const Pack2DResult res = nfdh_2d(Region2D{l.e1, l.e2}, rects);
      for (const RectPlacement& rp : res.placed) {
        to_global(rp.x, rp.y, 0, by_id.at(rp.id)->ch.orient, rp.id);
      }
      for (int id : res.unpacked) dropped.insert(id);
    } else if (c.kind == ContainerKind::Volume || c.kind == ContainerKind::Steinberg) {
      std::vector<OrientedItem> locals;
      locals.reserve(m);
      for (std::size_t i = 0; i < m; ++i) {
        const Local3 le = local_extents(entries[i].ch.dims, f);
        locals.push_back(OrientedItem{entries[i].it->id, entries[i].ch.orient, le.e1, le.e2,
                                      le.e3, entries[i].it->profit});
      }
      const Pack3DResult res = c.kind == ContainerKind::Volume
                                   ? nfdh_3d(Box3D{l.e1, l.e2, l.e3}, locals)
                                   : vol_pack_3d(Box3D{l.e1, l.e2, l.e3}, locals, c.eps);
      for (const Placement& p : res.placed) to_global(p.x, p.y, p.z, p.orient, p.item_id);
      for (int id : res.unpacked) dropped.insert(id);
    } else {  // LCont
      std::vector<Rect> fronts;
      fronts.reserve(m);
      for (std::size_t i = 0; i < m; ++i) {
        const Local3 le = local_extents(entries[i].ch.dims, f);
        fronts.push_back(Rect{entries[i].it->id, le.e1, le.e2, entries[i].it->profit});
      }
      const std::vector<RectPlacement> rps = pack_sheets(Region2D{l.e1, l.e2}, fronts, c.eps);
      for (const RectPlacement& rp : rps) {
        const Entry& e = *by_id.at(rp.id);
        Orient o = e.ch.orient;
        if (rp.rotated) {
          if (!allow_rotation) {
            throw PreconditionError(
                "pack_into_container: packing this L-container needs rotations");
          }
          // extents along the two face axes trade places
          const Local3 le = local_extents(e.ch.dims, f);
          double g[3] = {0, 0, 0};
          g[static_cast<int>(f.a1)] = le.e2;
          g[static_cast<int>(f.a2)] = le.e1;
          g[static_cast<int>(f.a3)] = le.e3;
          bool ok = false;
          for (Orient cand : orientations(*e.it, true)) {
            const Dims dd = oriented_dims(*e.it, cand);
            if (dd.w == g[0] && dd.d == g[1] && dd.h == g[2]) {
              o = cand;
              ok = true;
              break;
            }
          }
          if (!ok) throw std::logic_error("pack_into_container: no rotated orientation tag");
        }
        to_global(rp.x, rp.y, 0, o, rp.id);
      }
    }
  }

  for (const Item& it : items) {
    if (dropped.count(it.id)) out.dropped.push_back(it.id);
  }
  return out;
}

bool check_container_layout(const std::vector<Container>& cs, const Knapsack& k) {
  for (const Container& c : cs) {
    if (c.w <= 0 || c.d <= 0 || c.h <= 0) return false;
    if (c.x < -kTau || c.y < -kTau || c.z < -kTau) return false;
    if (c.x + c.w > k.side + kTau || c.y + c.d > k.side + kTau || c.z + c.h > k.side + kTau) {
      return false;
    }
  }
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      const double px =
          std::min(cs[i].x + cs[i].w, cs[j].x + cs[j].w) - std::max(cs[i].x, cs[j].x);
      const double py =
          std::min(cs[i].y + cs[i].d, cs[j].y + cs[j].d) - std::max(cs[i].y, cs[j].y);
      const double pz =
          std::min(cs[i].z + cs[i].h, cs[j].z + cs[j].h) - std::max(cs[i].z, cs[j].z);
      if (px > kTau && py > kTau && pz > kTau) return false;
    }
  }
  return true;
}

std::string container_summary(const std::vector<Container>& cs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Container& c : cs) {
    arr.push_back({{"kind", container_kind_name(c.kind)},
                   {"axis", axis_name(c.axis)},
                   {"w", c.w},
                   {"d", c.d},
                   {"h", c.h},
                   {"x", c.x},
                   {"y", c.y},
                   {"z", c.z},
                   {"eps", c.eps}});
  }
  return arr.dump();
}

}  // namespace cubik
