// Recursive rectangle packer behind steinberg_pack. Every move candidate is
// re-verified numerically before it is committed: anchored rects must be in
// bounds and mutually disjoint, child regions must be disjoint from anchors
// and from each other, and each child subproblem must again satisfy the area
// condition. A packing is therefore valid by construction; if no move
// applies the routine backtracks and ultimately falls back to an exhaustive
// search for small sets.
#include "cubik/subroutines.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cubik {
namespace {

double pos(double x) { return x > 0 ? x : 0.0; }

bool len_desc(const Rect& a, const Rect& b) {
  if (a.len != b.len) return a.len > b.len;
  return a.id < b.id;
}

bool br_desc(const Rect& a, const Rect& b) {
  if (a.br != b.br) return a.br > b.br;
  return a.id < b.id;
}

struct Stats {
  double lmax = 0, bmax = 0, area = 0;
};

Stats stats_of(const std::vector<Rect>& rs) {
  Stats s;
  for (const Rect& r : rs) {
    s.lmax = std::max(s.lmax, r.len);
    s.bmax = std::max(s.bmax, r.br);
    s.area += r.len * r.br;
  }
  return s;
}

// The area condition: lmax <= u, bmax <= v and
// 2*area <= u*v - (2*lmax-u)_+ * (2*bmax-v)_+.
bool cond_ok(double u, double v, const std::vector<Rect>& rs) {
  if (rs.empty()) return true;
  const Stats s = stats_of(rs);
  if (s.lmax > u + kTau || s.bmax > v + kTau) return false;
  return 2 * s.area <= u * v - pos(2 * s.lmax - u) * pos(2 * s.bmax - v) + kTau;
}

struct PB {  // placed box, absolute coordinates within the current region
  int id;
  double x0, y0, x1, y1;
};

bool boxes_overlap(double ax0, double ay0, double ax1, double ay1, double bx0, double by0,
                   double bx1, double by1) {
  const double px = std::min(ax1, bx1) - std::max(ax0, bx0);
  const double py = std::min(ay1, by1) - std::max(ay0, by0);
  return px > kTau && py > kTau;
}

struct Zone {
  double x0, y0, x1, y1;
  double w() const { return x1 - x0; }
  double h() const { return y1 - y0; }
};

using Child = std::pair<Zone, std::vector<Rect>>;

struct Engine {
  long nodes = 0;
  static constexpr long kNodeCap = 4000000;

  std::optional<std::vector<PB>> solve(double u, double v, const std::vector<Rect>& S,
                                       bool allow_transpose);

  // Check a candidate arrangement and recurse into its child regions.
  std::optional<std::vector<PB>> commit(double u, double v, const std::vector<PB>& anchored,
                                        const std::vector<Child>& children) {
    for (size_t i = 0; i < anchored.size(); ++i) {
      const PB& a = anchored[i];
      if (a.x0 < -kTau || a.y0 < -kTau || a.x1 > u + kTau || a.y1 > v + kTau) return std::nullopt;
      for (size_t j = 0; j < i; ++j) {
        const PB& o = anchored[j];
        if (boxes_overlap(a.x0, a.y0, a.x1, a.y1, o.x0, o.y0, o.x1, o.y1)) return std::nullopt;
      }
    }
    for (size_t ci = 0; ci < children.size(); ++ci) {
      const Zone& z = children[ci].first;
      if (children[ci].second.empty()) continue;
      if (z.x0 < -kTau || z.y0 < -kTau || z.x1 > u + kTau || z.y1 > v + kTau) return std::nullopt;
      if (z.w() <= kTau || z.h() <= kTau) return std::nullopt;
      for (const PB& a : anchored) {
        if (boxes_overlap(a.x0, a.y0, a.x1, a.y1, z.x0, z.y0, z.x1, z.y1)) return std::nullopt;
      }
      for (size_t cj = 0; cj < ci; ++cj) {
        if (children[cj].second.empty()) continue;
        const Zone& o = children[cj].first;
        if (boxes_overlap(o.x0, o.y0, o.x1, o.y1, z.x0, z.y0, z.x1, z.y1)) return std::nullopt;
      }
      if (!cond_ok(z.w(), z.h(), children[ci].second)) return std::nullopt;
    }
    std::vector<PB> out = anchored;
    for (const Child& c : children) {
      if (c.second.empty()) continue;
      auto sub = solve(c.first.w(), c.first.h(), c.second, true);
      if (!sub) return std::nullopt;
      for (PB p : *sub) {
        p.x0 += c.first.x0;
        p.x1 += c.first.x0;
        p.y0 += c.first.y0;
        p.y1 += c.first.y0;
        out.push_back(p);
      }
    }
    return out;
  }

  std::optional<std::vector<PB>> exhaustive(double u, double v, const std::vector<Rect>& S);

 private:
  long exh_nodes_ = 0;
  bool exhaustive_dfs(double u, double v, const std::vector<Rect>& S, std::vector<char>& used,
                      std::vector<PB>& placed, size_t left);
};

std::optional<std::vector<PB>> Engine::solve(double u, double v, const std::vector<Rect>& S,
                                             bool allow_transpose) {
  if (++nodes > kNodeCap) throw std::logic_error("steinberg_pack: search limit exceeded");
  const size_t n = S.size();
  if (n == 0) return std::vector<PB>{};
  if (n == 1) {
    return std::vector<PB>{{S[0].id, 0, 0, S[0].len, S[0].br}};
  }

  // Single row along the bottom.
  {
    double tot = 0;
    for (const Rect& r : S) tot += r.len;
    if (tot <= u + kTau) {
      std::vector<Rect> sorted = S;
      std::stable_sort(sorted.begin(), sorted.end(), br_desc);
      std::vector<PB> out;
      double cx = 0;
      for (const Rect& r : sorted) {
        out.push_back({r.id, cx, 0, cx + r.len, r.br});
        cx += r.len;
      }
      return out;
    }
  }
  // Single column along the left edge.
  {
    double tot = 0;
    for (const Rect& r : S) tot += r.br;
    if (tot <= v + kTau) {
      std::vector<Rect> sorted = S;
      std::stable_sort(sorted.begin(), sorted.end(), len_desc);
      std::vector<PB> out;
      double cy = 0;
      for (const Rect& r : sorted) {
        out.push_back({r.id, 0, cy, r.len, cy + r.br});
        cy += r.br;
      }
      return out;
    }
  }

  // Partition by size classes relative to the region halves.
  std::vector<Rect> bigs, wides, talls, mids;
  for (const Rect& r : S) {
    const bool w2 = r.len >= u / 2;
    const bool t2 = r.br > v / 2;
    if (r.len > u / 2 && t2) {
      bigs.push_back(r);
    } else if (w2) {
      wides.push_back(r);
    } else if (t2) {
      talls.push_back(r);
    } else {
      mids.push_back(r);
    }
  }

  // One dominant rect in the corner, other wides hung from the top left,
  // talls lined along the bottom right, the rest in a leftover rectangle.
  if (bigs.size() == 1) {
    const Rect& B = bigs[0];
    std::vector<PB> anchored;
    anchored.push_back({B.id, 0, 0, B.len, B.br});
    std::vector<Rect> ws = wides;
    std::stable_sort(ws.begin(), ws.end(), len_desc);
    double ytop = v;
    for (const Rect& r : ws) {
      anchored.push_back({r.id, 0, ytop - r.br, r.len, ytop});
      ytop -= r.br;
    }
    std::vector<Rect> ts = talls;
    std::stable_sort(ts.begin(), ts.end(), br_desc);
    double xr = u;
    for (const Rect& r : ts) {
      anchored.push_back({r.id, xr - r.len, 0, xr, r.br});
      xr -= r.len;
    }
    const double hw = v - ytop;  // total breadth of the wide stack
    const double wt = u - xr;    // total length of the tall row
    const Zone f1{B.len, 0, u - wt, v - hw};
    const Zone f2{0, B.br, B.len, v - hw};
    const Stats ms = stats_of(mids);
    const bool f1_first = mids.empty() || ms.lmax <= f1.w() + kTau;
    const Zone& zfirst = f1_first ? f1 : f2;
    const Zone& zsecond = f1_first ? f2 : f1;
    if (auto res = commit(u, v, anchored, {{zfirst, mids}})) return res;
    if (auto res = commit(u, v, anchored, {{zsecond, mids}})) return res;
  }

  // Wide stack in the bottom-left corner plus tall row hung from the top
  // right; remainder in the top-left rectangle between them.
  if (bigs.empty() && !wides.empty() && !talls.empty()) {
    std::vector<PB> anchored;
    std::vector<Rect> ws = wides;
    std::stable_sort(ws.begin(), ws.end(), len_desc);
    double ycum = 0;
    for (const Rect& r : ws) {
      anchored.push_back({r.id, 0, ycum, r.len, ycum + r.br});
      ycum += r.br;
    }
    std::vector<Rect> ts = talls;
    std::stable_sort(ts.begin(), ts.end(), br_desc);
    double btop = 0;
    double xr = u;
    for (const Rect& r : ts) {
      anchored.push_back({r.id, xr - r.len, v - r.br, xr, v});
      xr -= r.len;
      btop = std::max(btop, r.br);
    }
    const Zone f{0, ycum, xr, v};
    const Zone falt{0, ycum, u, v - btop};
    if (auto res = commit(u, v, anchored, {{f, mids}})) return res;
    if (auto res = commit(u, v, anchored, {{falt, mids}})) return res;
  }

  // Wide stack in the bottom-left corner, everything else above it.
  if (bigs.empty() && !wides.empty()) {
    std::vector<PB> anchored;
    std::vector<Rect> ws = wides;
    std::stable_sort(ws.begin(), ws.end(), len_desc);
    double ycum = 0;
    for (const Rect& r : ws) {
      anchored.push_back({r.id, 0, ycum, r.len, ycum + r.br});
      ycum += r.br;
    }
    std::vector<Rect> rest = talls;
    rest.insert(rest.end(), mids.begin(), mids.end());
    const Zone f{0, ycum, u, v};
    if (auto res = commit(u, v, anchored, {{f, rest}})) return res;
  }

  std::vector<Rect> sorted = S;
  std::stable_sort(sorted.begin(), sorted.end(), len_desc);

  // Prefix stack against the left edge, remainder to its right.
  for (size_t m = 1; m <= n; ++m) {
    double hsum = 0;
    for (size_t i = 0; i < m; ++i) hsum += sorted[i].br;
    if (hsum > v + kTau) break;
    std::vector<PB> anchored;
    double ycum = 0;
    for (size_t i = 0; i < m; ++i) {
      anchored.push_back({sorted[i].id, 0, ycum, sorted[i].len, ycum + sorted[i].br});
      ycum += sorted[i].br;
    }
    const double xbar = sorted[0].len;
    std::vector<Rect> rest(sorted.begin() + m, sorted.end());
    const Zone f{xbar, 0, u, v};
    if (auto res = commit(u, v, anchored, {{f, rest}})) return res;
  }

  // Non-prefix pair stacks (bounded enumeration).
  {
    const size_t lim = std::min<size_t>(n, 24);
    for (size_t i = 0; i < lim; ++i) {
      for (size_t j = i + 1; j < lim; ++j) {
        if (sorted[i].br + sorted[j].br > v + kTau) continue;
        std::vector<PB> anchored;
        anchored.push_back({sorted[i].id, 0, 0, sorted[i].len, sorted[i].br});
        anchored.push_back(
            {sorted[j].id, 0, sorted[i].br, sorted[j].len, sorted[i].br + sorted[j].br});
        std::vector<Rect> rest;
        for (size_t t = 0; t < n; ++t) {
          if (t != i && t != j) rest.push_back(sorted[t]);
        }
        const Zone f{sorted[i].len, 0, u, v};
        if (auto res = commit(u, v, anchored, {{f, rest}})) return res;
      }
    }
  }

  // Vertical split: a prefix feeds the left band, the suffix the right band.
  for (int key = 0; key < 2; ++key) {
    std::vector<Rect> ord = S;
    std::stable_sort(ord.begin(), ord.end(), key == 0 ? len_desc : br_desc);
    std::vector<double> suf_lmax(n + 1, 0);
    for (size_t i = n; i-- > 0;) suf_lmax[i] = std::max(suf_lmax[i + 1], ord[i].len);
    double pre_area = 0, pre_lmax = 0;
    for (size_t m = 1; m < n; ++m) {
      pre_area += ord[m - 1].len * ord[m - 1].br;
      pre_lmax = std::max(pre_lmax, ord[m - 1].len);
      const double u1 = std::max(pre_lmax, 2 * pre_area / v);
      if (u1 + suf_lmax[m] > u + kTau) continue;
      std::vector<Rect> pre(ord.begin(), ord.begin() + m);
      std::vector<Rect> suf(ord.begin() + m, ord.end());
      const Zone zl{0, 0, u1, v};
      const Zone zr{u1, 0, u, v};
      if (auto res = commit(u, v, {}, {{zl, pre}, {zr, suf}})) return res;
    }
  }

  // Same move set on the transposed problem (axes relabeled, not rotated).
  if (allow_transpose) {
    std::vector<Rect> tr;
    tr.reserve(n);
    for (const Rect& r : S) tr.push_back({r.id, r.br, r.len, r.profit});
    if (auto res = solve(v, u, tr, false)) {
      std::vector<PB> out;
      out.reserve(res->size());
      for (const PB& p : *res) out.push_back({p.id, p.y0, p.x0, p.y1, p.x1});
      return out;
    }
  }

  if (n <= 6) {
    if (auto res = exhaustive(u, v, S)) return res;
  }
  return std::nullopt;
}

std::optional<std::vector<PB>> Engine::exhaustive(double u, double v, const std::vector<Rect>& S) {
  exh_nodes_ = 0;
  std::vector<char> used(S.size(), 0);
  std::vector<PB> placed;
  if (exhaustive_dfs(u, v, S, used, placed, S.size())) return placed;
  return std::nullopt;
}

bool Engine::exhaustive_dfs(double u, double v, const std::vector<Rect>& S,
                            std::vector<char>& used, std::vector<PB>& placed, size_t left) {
  if (left == 0) return true;
  if (++exh_nodes_ > 300000) return false;
  // Candidate anchors: origin plus edges of already placed boxes.
  std::vector<double> xs{0}, ys{0};
  for (const PB& p : placed) {
    xs.push_back(p.x1);
    ys.push_back(p.y1);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  for (size_t i = 0; i < S.size(); ++i) {
    if (used[i]) continue;
    // Identical unplaced rects are interchangeable; try only the first.
    bool dup = false;
    for (size_t j = 0; j < i; ++j) {
      if (!used[j] && S[j].len == S[i].len && S[j].br == S[i].br) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    used[i] = 1;
    for (const double y : ys) {
      for (const double x : xs) {
        const PB cand{S[i].id, x, y, x + S[i].len, y + S[i].br};
        if (cand.x1 > u + kTau || cand.y1 > v + kTau) continue;
        bool clash = false;
        for (const PB& p : placed) {
          if (boxes_overlap(cand.x0, cand.y0, cand.x1, cand.y1, p.x0, p.y0, p.x1, p.y1)) {
            clash = true;
            break;
          }
        }
        if (clash) continue;
        placed.push_back(cand);
        if (exhaustive_dfs(u, v, S, used, placed, left - 1)) return true;
        placed.pop_back();
      }
    }
    used[i] = 0;
  }
  return false;
}

}  // namespace

std::vector<RectPlacement> steinberg_pack(const Region2D& region, std::vector<Rect> rects) {
  if (!steinberg_condition(region, rects)) {
    throw PreconditionError(
        "steinberg_pack: area condition violated; shrink the set before packing");
  }
  Engine eng;
  auto res = eng.solve(region.len, region.br, rects, true);
  if (!res) throw std::logic_error("steinberg_pack: no packing found");
  // Validate the assembled packing before handing it out.
  const std::vector<PB>& pbs = *res;
  for (size_t i = 0; i < pbs.size(); ++i) {
    const PB& a = pbs[i];
    if (a.x0 < -kTau || a.y0 < -kTau || a.x1 > region.len + kTau || a.y1 > region.br + kTau) {
      throw std::logic_error("steinberg_pack: placement out of bounds");
    }
    for (size_t j = 0; j < i; ++j) {
      const PB& b = pbs[j];
      if (boxes_overlap(a.x0, a.y0, a.x1, a.y1, b.x0, b.y0, b.x1, b.y1)) {
        throw std::logic_error("steinberg_pack: overlapping placements");
      }
    }
  }
  std::vector<RectPlacement> out;
  out.reserve(pbs.size());
  for (const PB& p : pbs) out.push_back({p.id, p.x0, p.y0, false});
  return out;
}

}  // namespace cubik
