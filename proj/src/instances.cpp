#include "cubik/instances.h"

#include <cmath>
#include <random>
#include <stdexcept>

namespace cubik {

namespace {

void check_level(int m) {
  if (m < 1 || m > 20)
    throw std::invalid_argument("hardness level m must lie in [1, 20], got " + std::to_string(m));
}

// uniform draws via explicit bit arithmetic so instances stay reproducible
// regardless of the standard library's distribution internals
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double in_range(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * unit(rng); }

Rat cent_profit(std::mt19937_64& rng) { return Rat(1 + static_cast<long long>(rng() % 100), 100); }

double param_or(const std::map<std::string, double>& params, const std::string& key, double dflt) {
  auto it = params.find(key);
  return it == params.end() ? dflt : it->second;
}

double positive_budget(double budget, const std::string& what) {
  if (budget <= 0) throw std::invalid_argument("no " + what + " budget left at these parameters");
  return budget;
}

}  // namespace

Instance gen_hardness(int m) {
  check_level(m);
  const double side = std::ldexp(1.0, m + 1);  // N = 2^(m+1)
  Instance inst;
  inst.knapsack.side = side;
  inst.allow_rotation = false;
  inst.items.reserve(3 * static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i) {
    const double step = std::ldexp(1.0, i - 1);  // 2^(i-1)
    const double big = side + 1 - step;          // N+1-2^(i-1)
    const double small = side + 1 - 2 * step;    // N+1-2^i
    const int base = 3 * (i - 1);
    inst.items.push_back({base, big, big, step, Rat(1)});
    inst.items.push_back({base + 1, step, big, small, Rat(1)});
    inst.items.push_back({base + 2, small, step, small, Rat(1)});
  }
  return inst;
}

PackingSolution hardness_optimal_packing(int m) {
  check_level(m);
  PackingSolution sol;
  for (int i = 1; i <= m; ++i) {
    const double step = std::ldexp(1.0, i - 1);
    const double off = step - 1;  // corner of the free cube before level i
    const int base = 3 * (i - 1);
    sol.placements.push_back({base, Orient::WDH, off, off, off});
    sol.placements.push_back({base + 1, Orient::WDH, off, off, off + step});
    sol.placements.push_back({base + 2, Orient::WDH, off + step, off, off + step});
  }
  sol.profit = Rat(3 * m);
  sol.provenance = "hardness-nested";
  return sol;
}

std::vector<std::string> random_families() {
  return {"cubes",
          "thin-I1",
          "mixed-classes",
          "lemma-feasible:nfdh_2d",
          "lemma-feasible:nfdh_3d",
          "lemma-feasible:steinberg",
          "lemma-feasible:pack_sheets",
          "lemma-feasible:vol_pack_3d",
          "lemma-feasible:vol_pack_3dr"};
}

Instance gen_random(const std::string& family, int n, std::uint64_t seed,
                    const std::map<std::string, double>& params) {
  if (n < 0) throw std::invalid_argument("item count must be nonnegative");
  std::mt19937_64 rng(seed);
  Instance inst;
  inst.knapsack.side = 1.0;
  inst.allow_rotation = param_or(params, "rot", 0) != 0;
  inst.eps = param_or(params, "eps", 0.1);
  inst.mu = param_or(params, "mu", -1);
  inst.items.reserve(static_cast<std::size_t>(n));
  const double eps = inst.eps;

  auto add = [&](double w, double d, double h) {
    inst.items.push_back({static_cast<int>(inst.items.size()), w, d, h, cent_profit(rng)});
  };
  // scale one dimension of every item down by budget/total so the family's
  // total-size constraint holds; the per-item caps only shrink with it
  auto fit_budget = [&](double total, double budget, auto shrink) {
    if (total <= budget) return;
    const double f = budget / total * (1 - 1e-12);
    for (Item& it : inst.items) shrink(it, f);
  };

  if (family == "cubes") {
    for (int i = 0; i < n; ++i) {
      const double s = in_range(rng, 0.05, 0.35);
      add(s, s, s);
    }
  } else if (family == "thin-I1") {
    const double cap = param_or(params, "mu", 0.01);
    inst.mu = cap;
    for (int i = 0; i < n; ++i) {
      const double w = in_range(rng, 0.05, 0.9);
      const double d = in_range(rng, 0.05, 0.9);
      const double h = cap * in_range(rng, 0.2, 1.0);
      add(w, d, h);
    }
  } else if (family == "mixed-classes") {
    for (int i = 0; i < n; ++i) {
      const int shape = static_cast<int>(rng() % 5);
      double w, d, h;
      switch (shape) {
        case 0:  // large: every dimension well above any sensible mu
          w = in_range(rng, 0.2, 0.6);
          d = in_range(rng, 0.2, 0.6);
          h = in_range(rng, 0.2, 0.6);
          break;
        case 1:  // height-thin
          w = in_range(rng, 0.05, 0.9);
          d = in_range(rng, 0.05, 0.9);
          h = in_range(rng, 0.0005, 0.01);
          break;
        case 2:  // width-thin
          w = in_range(rng, 0.0005, 0.01);
          d = in_range(rng, 0.05, 0.9);
          h = in_range(rng, 0.05, 0.9);
          break;
        case 3:  // depth-thin
          w = in_range(rng, 0.05, 0.9);
          d = in_range(rng, 0.0005, 0.01);
          h = in_range(rng, 0.05, 0.9);
          break;
        default:  // slab: both footprint sides past one half
          w = in_range(rng, 0.55, 0.95);
          d = in_range(rng, 0.55, 0.95);
          h = in_range(rng, 0.001, 0.01);
          break;
      }
      add(w, d, h);
    }
  } else if (family == "lemma-feasible:nfdh_2d") {
    double area = 0;
    for (int i = 0; i < n; ++i) {
      const double w = eps * in_range(rng, 0.1, 1.0);
      const double d = eps * in_range(rng, 0.1, 1.0);
      const double h = in_range(rng, 0.01, 0.1);
      add(w, d, h);
      area += w * d;
    }
    fit_budget(area, positive_budget(1 - 2 * eps, "area"), [](Item& it, double f) {
      it.w *= std::sqrt(f);
      it.d *= std::sqrt(f);
    });
  } else if (family == "lemma-feasible:nfdh_3d") {
    double vol = 0;
    for (int i = 0; i < n; ++i) {
      const double w = eps * in_range(rng, 0.1, 1.0);
      const double d = eps * in_range(rng, 0.1, 1.0);
      const double h = eps * in_range(rng, 0.1, 1.0);
      add(w, d, h);
      vol += w * d * h;
    }
    fit_budget(vol, positive_budget(1 - 3 * eps, "volume"), [](Item& it, double f) {
      const double g = std::cbrt(f);
      it.w *= g;
      it.d *= g;
      it.h *= g;
    });
  } else if (family == "lemma-feasible:steinberg") {
    double area = 0;
    for (int i = 0; i < n; ++i) {
      const double w = in_range(rng, 0.05, 0.5);
      const double d = in_range(rng, 0.05, 0.5);
      const double h = in_range(rng, 0.01, 0.1);
      add(w, d, h);
      area += w * d;
    }
    fit_budget(area, 0.5, [](Item& it, double f) {
      it.w *= std::sqrt(f);
      it.d *= std::sqrt(f);
    });
  } else if (family == "lemma-feasible:pack_sheets") {
    const double delta = param_or(params, "delta", 0.1);
    double area = 0;
    for (int i = 0; i < n; ++i) {
      const double w = in_range(rng, 0.5, 1.0);
      const double d = delta * in_range(rng, 0.1, 1.0);
      const double h = in_range(rng, 0.01, 0.1);
      add(w, d, h);
      area += w * d;
    }
    fit_budget(area, positive_budget(0.75 - 3 * delta, "area"),
               [](Item& it, double f) { it.d *= f; });
  } else if (family == "lemma-feasible:vol_pack_3d") {
    double vol = 0;
    for (int i = 0; i < n; ++i) {
      double w = in_range(rng, 0.05, 0.95);
      double d = in_range(rng, 0.05, 0.5);
      if (rng() % 2) std::swap(w, d);
      const double h = eps * in_range(rng, 0.1, 1.0);
      add(w, d, h);
      vol += w * d * h;
    }
    fit_budget(vol, positive_budget(1.0 / 3 - 2 * eps, "volume"),
               [](Item& it, double f) { it.h *= f; });
  } else if (family == "lemma-feasible:vol_pack_3dr") {
    const double reps = param_or(params, "eps", 0.05);
    inst.eps = reps;
    inst.allow_rotation = true;
    double vol = 0;
    for (int i = 0; i < n; ++i) {
      double dims[3];
      dims[0] = in_range(rng, 0.05, 0.9);
      dims[1] = in_range(rng, 0.05, 0.9);
      dims[2] = reps * reps * in_range(rng, 0.2, 1.0);
      std::swap(dims[2], dims[rng() % 3]);  // thin axis anywhere; rotation reorients
      add(dims[0], dims[1], dims[2]);
      vol += dims[0] * dims[1] * dims[2];
    }
    fit_budget(vol, positive_budget(7.0 / 24 - 5 * reps, "volume"), [](Item& it, double f) {
      double* thin = &it.w;
      if (it.d < *thin) thin = &it.d;
      if (it.h < *thin) thin = &it.h;
      *thin *= f;
    });
  } else {
    throw std::invalid_argument("unknown instance family: " + family);
  }
  return inst;
}

}  // namespace cubik
