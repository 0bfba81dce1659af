#include "cubik/classify.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"

#include "cubik/subroutines.h"

namespace cubik {

Classification classify_items(const Instance& inst, double mu) {
  if (!(mu > 0) || !(mu < 0.5)) {
    throw PreconditionError("classify_items: mu must lie in (0, 1/2)");
  }
  Classification c;
  c.mu = mu;
  for (const Item& it : inst.items) {
    const double v = it.w * it.d * it.h;
    c.p_total += it.profit;
    if (it.h <= mu + kTau) {
      c.I1.push_back(it.id);
      c.p_1 += it.profit;
      c.v_1 += v;
      if (it.w > 0.5 + kTau && it.d > 0.5 + kTau) {
        c.I1l.push_back(it.id);
        c.p_1l += it.profit;
        c.h_1l += it.h;
      } else {
        c.I1s.push_back(it.id);
        c.p_1s += it.profit;
        c.v_1s += v;
      }
    } else if (it.w <= mu + kTau) {
      c.I2.push_back(it.id);
      c.p_2 += it.profit;
      c.v_2 += v;
      if (it.d > 0.5 + kTau && it.h > 0.5 + kTau) {
        c.I2l.push_back(it.id);
        c.p_2l += it.profit;
        c.w_2l += it.w;
      } else {
        c.I2s.push_back(it.id);
        c.p_2s += it.profit;
        c.v_2s += v;
      }
      if (it.h <= 0.5 + kTau) {
        c.S2.push_back(it.id);
        c.p_2t += it.profit;
      } else {
        c.p_2h += it.profit;
      }
    } else if (it.d <= mu + kTau) {
      c.I3.push_back(it.id);
      c.p_3 += it.profit;
      c.v_3 += v;
      if (it.w > 0.5 + kTau && it.h > 0.5 + kTau) {
        c.I3l.push_back(it.id);
        c.p_3l += it.profit;
        c.d_3l += it.d;
      } else {
        c.I3s.push_back(it.id);
        c.p_3s += it.profit;
        c.v_3s += v;
      }
      if (it.h <= 0.5 + kTau) {
        c.S3.push_back(it.id);
        c.p_3t += it.profit;
      } else {
        c.p_3h += it.profit;
      }
    } else {
      c.L.push_back(it.id);
      c.p_L += it.profit;
      c.v_L += v;
      if (it.h <= 0.5 + kTau) {
        c.S.push_back(it.id);
        c.p_Lt += it.profit;
      } else {
        c.p_Lh += it.profit;
      }
    }
  }
  return c;
}

std::string classification_json(const Classification& c) {
  using nlohmann::json;
  json j;
  j["mu"] = c.mu;
  auto ids = [](const std::vector<int>& v) { return json(v); };
  j["classes"] = {{"L", ids(c.L)}, {"I1", ids(c.I1)}, {"I2", ids(c.I2)}, {"I3", ids(c.I3)}};
  j["splits"] = {{"I1l", ids(c.I1l)}, {"I1s", ids(c.I1s)}, {"I2l", ids(c.I2l)},
                 {"I2s", ids(c.I2s)}, {"I3l", ids(c.I3l)}, {"I3s", ids(c.I3s)},
                 {"S2", ids(c.S2)},   {"S3", ids(c.S3)},   {"S", ids(c.S)}};
  j["profit"] = {{"total", c.p_total.str()}, {"L", c.p_L.str()},   {"I1", c.p_1.str()},
                 {"I2", c.p_2.str()},        {"I3", c.p_3.str()},  {"I1l", c.p_1l.str()},
                 {"I1s", c.p_1s.str()},      {"I2l", c.p_2l.str()}, {"I2s", c.p_2s.str()},
                 {"I3l", c.p_3l.str()},      {"I3s", c.p_3s.str()}, {"S2", c.p_2t.str()},
                 {"I2tall", c.p_2h.str()},   {"S3", c.p_3t.str()},  {"I3tall", c.p_3h.str()},
                 {"S", c.p_Lt.str()},        {"Ltall", c.p_Lh.str()}};
  j["volume"] = {{"L", c.v_L},    {"I1", c.v_1},   {"I2", c.v_2},  {"I3", c.v_3},
                 {"I1s", c.v_1s}, {"I2s", c.v_2s}, {"I3s", c.v_3s}};
  j["extents"] = {{"h_I1l", c.h_1l}, {"w_I2l", c.w_2l}, {"d_I3l", c.d_3l}};
  return j.dump(2);
}

DeltaChoice choose_delta(const std::vector<Item>& items, double eps, double floor) {
  if (!(eps > 0) || eps > 0.5) {
    throw PreconditionError("choose_delta: eps must lie in (0, 1/2]");
  }
  const int k = static_cast<int>(std::ceil(2 / eps));
  Rat total;
  for (const Item& it : items) total += it.profit;
  DeltaChoice best;
  bool have = false;
  double delta = eps;
  for (int i = 0; i < k; ++i) {
    const double lo = std::max(std::pow(delta, 10), floor);
    Rat band;
    for (const Item& it : items) {
      const bool w_in = it.w >= lo && it.w < delta;
      const bool d_in = it.d >= lo && it.d < delta;
      if (w_in || d_in) band += it.profit;
    }
    if (!have || band < best.band_profit) {
      best = DeltaChoice{delta, band};
      have = true;
    }
    delta = lo;
  }
  if (best.band_profit.to_double() > eps * total.to_double() + 1e-9) {
    throw std::logic_error("choose_delta: pigeonhole bound violated");
  }
  return best;
}

WidthDepthClasses big_wide_long_small(const std::vector<Item>& items, double delta,
                                      double floor) {
  if (!(delta > 0) || delta >= 1) {
    throw PreconditionError("big_wide_long_small: delta must lie in (0, 1)");
  }
  const double lo = std::max(std::pow(delta, 10), floor);
  WidthDepthClasses out;
  for (const Item& it : items) {
    const bool w_med = it.w >= lo && it.w < delta;
    const bool d_med = it.d >= lo && it.d < delta;
    if (w_med || d_med) {
      out.medium.push_back(it.id);
      continue;
    }
    const bool w_big = it.w >= delta;
    const bool d_big = it.d >= delta;
    if (w_big && d_big) {
      out.big.push_back(it.id);
    } else if (w_big) {
      out.wide.push_back(it.id);
    } else if (d_big) {
      out.lng.push_back(it.id);
    } else {
      out.small.push_back(it.id);
    }
  }
  return out;
}

}  // namespace cubik
