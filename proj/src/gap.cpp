#include "cubik/gap.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "cubik/subroutines.h"

namespace cubik {

GapInstance build_gap_instance(const std::vector<Container>& containers,
                               const std::vector<Item>& items, bool allow_rotation) {
  if (!check_container_layout(containers, Knapsack{})) {
    throw PreconditionError("build_gap_instance: containers overlap or leave the knapsack");
  }
  GapInstance g;
  g.caps.reserve(containers.size());
  for (const Container& c : containers) g.caps.push_back(cap(c));
  g.item_ids.reserve(items.size());
  g.profits.reserve(items.size());
  g.sizes.reserve(items.size());
  for (const Item& it : items) {
    g.item_ids.push_back(it.id);
    g.profits.push_back(it.profit);
    std::vector<std::optional<double>> row;
    row.reserve(containers.size());
    for (const Container& c : containers) row.push_back(f_C(c, it, allow_rotation));
    g.sizes.push_back(std::move(row));
  }
  return g;
}

namespace {

constexpr std::size_t kMaxKnapsacks = 12;

struct ExactSolver {
  const GapInstance& g;
  std::int64_t node_limit;
  std::int64_t nodes = 0;
  bool truncated = false;

  std::vector<int> cur, best;
  Rat cur_profit, best_profit;
  bool have_best = false;

  std::vector<Rat> suffix_profit;       // of items i..n-1
  std::vector<double> min_size;         // min admissible size, inf when none
  std::vector<double> profit_d;
  std::vector<std::size_t> density_order;

  explicit ExactSolver(const GapInstance& gi, std::int64_t limit) : g(gi), node_limit(limit) {
    const std::size_t n = g.n();
    cur.assign(n, -1);
    best.assign(n, -1);
    suffix_profit.assign(n + 1, Rat(0));
    for (std::size_t i = n; i-- > 0;) suffix_profit[i] = suffix_profit[i + 1] + g.profits[i];
    min_size.assign(n, std::numeric_limits<double>::infinity());
    profit_d.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      profit_d[i] = g.profits[i].to_double();
      for (std::size_t j = 0; j < g.k(); ++j) {
        if (g.sizes[i][j] && *g.sizes[i][j] < min_size[i]) min_size[i] = *g.sizes[i][j];
      }
    }
    density_order.resize(n);
    std::iota(density_order.begin(), density_order.end(), std::size_t{0});
    std::stable_sort(density_order.begin(), density_order.end(),
                     [&](std::size_t a, std::size_t b) {
                       const double da = profit_d[a] / std::max(min_size[a], 1e-300);
                       const double db = profit_d[b] / std::max(min_size[b], 1e-300);
                       return da > db;
                     });
  }

  double frac_bound(std::size_t i, const std::array<double, kMaxKnapsacks>& rem) const {
    double room = g.n() * kTau;
    for (std::size_t j = 0; j < g.k(); ++j) room += rem[j];
    double ub = 0;
    for (std::size_t idx : density_order) {
      if (idx < i || !std::isfinite(min_size[idx])) continue;
      if (min_size[idx] <= room) {
        room -= min_size[idx];
        ub += profit_d[idx];
      } else {
        ub += profit_d[idx] * room / std::max(min_size[idx], 1e-300);
        break;
      }
    }
    return ub;
  }

  void dfs(std::size_t i, std::array<double, kMaxKnapsacks> rem) {
    if (truncated) return;
    if (++nodes > node_limit) {
      truncated = true;
      return;
    }
    if (i == g.n()) {
      if (!have_best || cur_profit > best_profit) {
        best = cur;
        best_profit = cur_profit;
        have_best = true;
      }
      return;
    }
    if (have_best) {
      if (cur_profit + suffix_profit[i] <= best_profit) return;
      if (cur_profit.to_double() + frac_bound(i, rem) < best_profit.to_double() - 1e-9) return;
    }
    for (std::size_t j = 0; j < g.k(); ++j) {
      const auto& s = g.sizes[i][j];
      if (!s || rem[j] + kTau < *s) continue;
      auto next = rem;
      next[j] -= *s;
      cur[i] = static_cast<int>(j);
      cur_profit += g.profits[i];
      dfs(i + 1, next);
      cur_profit -= g.profits[i];
      if (truncated) break;
    }
    cur[i] = -1;
    if (!truncated) dfs(i + 1, rem);
  }
};

}  // namespace

GapResult solve_gap_exact(const GapInstance& g, std::int64_t node_limit) {
  if (g.n() > 40) throw PreconditionError("solve_gap_exact: more than 40 items");
  if (g.k() > kMaxKnapsacks) throw PreconditionError("solve_gap_exact: more than 12 knapsacks");
  ExactSolver solver(g, node_limit);
  std::array<double, kMaxKnapsacks> rem{};
  for (std::size_t j = 0; j < g.k(); ++j) rem[j] = g.caps[j];
  solver.dfs(0, rem);
  GapResult res;
  res.assign = solver.have_best ? solver.best : std::vector<int>(g.n(), -1);
  res.profit = solver.have_best ? solver.best_profit : Rat(0);
  res.optimal = !solver.truncated;
  return res;
}

GapResult solve_gap_greedy(const GapInstance& g) {
  const std::size_t n = g.n(), k = g.k();
  std::vector<double> min_size(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (g.sizes[i][j] && *g.sizes[i][j] < min_size[i]) min_size[i] = *g.sizes[i][j];
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double da = g.profits[a].to_double() / std::max(min_size[a], 1e-300);
    const double db = g.profits[b].to_double() / std::max(min_size[b], 1e-300);
    return da > db;
  });

  GapResult ff;
  ff.assign.assign(n, -1);
  std::vector<double> used(k, 0);
  for (std::size_t idx : order) {
    for (std::size_t j = 0; j < k; ++j) {
      const auto& s = g.sizes[idx][j];
      if (!s || used[j] + *s > g.caps[j] + kTau) continue;
      used[j] += *s;
      ff.assign[idx] = static_cast<int>(j);
      ff.profit += g.profits[idx];
      break;
    }
  }

  // a single heavy item can beat density order entirely
  GapResult single;
  single.assign.assign(n, -1);
  std::ptrdiff_t best_i = -1;
  int best_j = -1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const auto& s = g.sizes[i][j];
      if (!s || *s > g.caps[j] + kTau) continue;
      if (best_i < 0 || g.profits[i] > single.profit) {
        best_i = static_cast<std::ptrdiff_t>(i);
        best_j = static_cast<int>(j);
        single.profit = g.profits[i];
      }
      break;
    }
  }
  if (best_i >= 0) single.assign[static_cast<std::size_t>(best_i)] = best_j;

  return single.profit > ff.profit ? single : ff;
}

}  // namespace cubik
