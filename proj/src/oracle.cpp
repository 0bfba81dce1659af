#include "cubik/oracle.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cubik/subroutines.h"

namespace cubik {

namespace {

struct Pick {
  const Item* item;
  Orient orient;
  Dims dims;
};

struct PlacedBox {
  double x, y, z, w, d, h;
};

bool boxes_overlap(const PlacedBox& a, const PlacedBox& b) {
  return std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x) > kTau &&
         std::min(a.y + a.d, b.y + b.d) - std::max(a.y, b.y) > kTau &&
         std::min(a.z + a.h, b.z + b.h) - std::max(a.z, b.z) > kTau;
}

// distinct subset sums of the picked extents along one axis, ascending;
// values within 1e-12 are merged (the overlap slack absorbs the difference)
std::vector<double> axis_patterns(const std::vector<Pick>& picks, double side, double Dims::*axis) {
  std::vector<double> sums{0.0};
  for (const Pick& p : picks) {
    const double extent = p.dims.*axis;
    const std::size_t known = sums.size();
    for (std::size_t i = 0; i < known; ++i) {
      const double s = sums[i] + extent;
      if (s < side - kTau) sums.push_back(s);
    }
  }
  std::sort(sums.begin(), sums.end());
  sums.erase(
      std::unique(sums.begin(), sums.end(), [](double a, double b) { return b - a <= 1e-12; }),
      sums.end());
  return sums;
}

// exact equality: only lets bit-identical duplicates share the anchor-order
// cut, near-equal items are simply searched in full
bool same_pick(const Pick& a, const Pick& b) {
  return a.dims.w == b.dims.w && a.dims.d == b.dims.d && a.dims.h == b.dims.h &&
         a.item->profit == b.item->profit;
}

struct Search {
  double side = 1;
  std::int64_t budget = 0;
  std::int64_t nodes = 0;
  std::vector<Item> items;                // profit-descending order
  std::vector<std::vector<Orient>> fits;  // orientations inside the knapsack
  std::vector<Rat> suffix;                // positive profit still available from k on
  Rat best_profit;
  std::vector<Placement> best;

  // anchors are enumerated by one linear index over (z, y, x) so that runs of
  // identical items can be forced onto strictly increasing indices
  bool place(std::size_t j, const std::vector<Pick>& picks, const std::vector<double>& px,
             const std::vector<double>& py, const std::vector<double>& pz,
             std::vector<PlacedBox>& placed, std::vector<Placement>& out,
             std::vector<std::size_t>& used_idx) {
    if (j == picks.size()) return true;
    const Pick& pk = picks[j];
    const std::size_t nx = px.size(), ny = py.size();
    const std::size_t total = pz.size() * ny * nx;
    std::size_t start = 0;
    if (j > 0 && same_pick(picks[j - 1], pk)) start = used_idx[j - 1] + 1;
    for (std::size_t idx = start; idx < total; ++idx) {
      if (++nodes > budget) throw PreconditionError("oracle placement budget exceeded");
      const std::size_t iz = idx / (ny * nx);
      const std::size_t rem = idx % (ny * nx);
      const std::size_t iy = rem / nx, ix = rem % nx;
      const double z = pz[iz];
      if (z + pk.dims.h > side + kTau) break;  // anchors only grow from here
      const double y = py[iy];
      if (y + pk.dims.d > side + kTau) {  // rest of this z-plane is no better
        idx = (iz + 1) * ny * nx - 1;
        continue;
      }
      const double x = px[ix];
      if (x + pk.dims.w > side + kTau) {  // rest of this y-row is no better
        idx = (iz * ny + iy + 1) * nx - 1;
        continue;
      }
      const PlacedBox box{x, y, z, pk.dims.w, pk.dims.d, pk.dims.h};
      bool clash = false;
      for (const PlacedBox& other : placed)
        if (boxes_overlap(box, other)) {
          clash = true;
          break;
        }
      if (clash) continue;
      placed.push_back(box);
      out.push_back({pk.item->id, pk.orient, x, y, z});
      used_idx[j] = idx;
      if (place(j + 1, picks, px, py, pz, placed, out, used_idx)) return true;
      out.pop_back();
      placed.pop_back();
    }
    return false;
  }

  void attempt(std::vector<Pick> picks, const Rat& profit) {
    std::sort(picks.begin(), picks.end(), [](const Pick& a, const Pick& b) {
      const double va = a.dims.volume(), vb = b.dims.volume();
      if (va != vb) return va > vb;
      if (a.dims.w != b.dims.w) return a.dims.w < b.dims.w;
      if (a.dims.d != b.dims.d) return a.dims.d < b.dims.d;
      if (a.dims.h != b.dims.h) return a.dims.h < b.dims.h;
      return a.item->id < b.item->id;
    });
    const std::vector<double> px = axis_patterns(picks, side, &Dims::w);
    const std::vector<double> py = axis_patterns(picks, side, &Dims::d);
    const std::vector<double> pz = axis_patterns(picks, side, &Dims::h);
    std::vector<PlacedBox> placed;
    std::vector<Placement> out;
    std::vector<std::size_t> used_idx(picks.size(), 0);
    if (place(0, picks, px, py, pz, placed, out, used_idx)) {
      best_profit = profit;
      best = out;
    }
  }

  void choose(std::size_t k, const Rat& profit, double volume, std::vector<Pick>& picks) {
    if (!(best_profit < profit + suffix[k])) return;  // cannot strictly improve
    if (k == items.size()) {
      attempt(picks, profit);
      return;
    }
    const Item& it = items[k];
    for (Orient o : fits[k]) {
      const Dims d = oriented_dims(it, o);
      if (volume + d.volume() <= side * side * side + kTau) {
        picks.push_back({&it, o, d});
        choose(k + 1, profit + it.profit, volume + d.volume(), picks);
        picks.pop_back();
      }
    }
    choose(k + 1, profit, volume, picks);
  }
};

}  // namespace

OracleResult oracle_exact(const Instance& inst, const OracleLimits& limits) {
  const int n = static_cast<int>(inst.items.size());
  if (n > limits.max_items)
    throw PreconditionError("oracle handles at most " + std::to_string(limits.max_items) +
                            " items, instance has " + std::to_string(n));
  Search s;
  s.side = inst.knapsack.side;
  s.budget = limits.node_budget;
  s.items = inst.items;
  std::sort(s.items.begin(), s.items.end(), [](const Item& a, const Item& b) {
    if (a.profit != b.profit) return b.profit < a.profit;
    return a.id < b.id;
  });
  s.fits.resize(s.items.size());
  for (std::size_t i = 0; i < s.items.size(); ++i) {
    if (!(Rat(0) < s.items[i].profit)) continue;  // never part of a maximum
    for (Orient o : orientations(s.items[i], inst.allow_rotation)) {
      const Dims d = oriented_dims(s.items[i], o);
      if (d.w <= s.side + kTau && d.d <= s.side + kTau && d.h <= s.side + kTau)
        s.fits[i].push_back(o);
    }
  }
  s.suffix.assign(s.items.size() + 1, Rat(0));
  for (std::size_t i = s.items.size(); i-- > 0;) {
    s.suffix[i] = s.suffix[i + 1];
    if (!s.fits[i].empty()) s.suffix[i] = s.suffix[i] + s.items[i].profit;
  }
  std::vector<Pick> picks;
  s.choose(0, Rat(0), 0.0, picks);
  OracleResult res;
  res.profit = s.best_profit;
  res.solution.placements = s.best;
  res.solution.profit = s.best_profit;
  res.solution.provenance = "oracle-exact";
  res.nodes = s.nodes;
  return res;
}

}  // namespace cubik
