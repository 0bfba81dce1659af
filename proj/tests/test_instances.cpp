#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubik/geometry.h"
#include "cubik/instances.h"
#include "cubik/oracle.h"
#include "cubik/strategies.h"
#include "cubik/subroutines.h"
#include "cubik/volpack.h"

using namespace cubik;

namespace {

bool same_items(const std::vector<Item>& a, const std::vector<Item>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].id != b[i].id || a[i].w != b[i].w || a[i].d != b[i].d || a[i].h != b[i].h ||
        !(a[i].profit == b[i].profit))
      return false;
  return true;
}

const Item& item_by_id(const std::vector<Item>& items, int id) {
  for (const Item& it : items)
    if (it.id == id) return it;
  REQUIRE(false);
  return items.front();
}

std::vector<Rect> footprints(const std::vector<Item>& items) {
  std::vector<Rect> rects;
  for (const Item& it : items) rects.push_back({it.id, it.w, it.d, it.profit});
  return rects;
}

double total_volume(const std::vector<Item>& items) {
  double v = 0;
  for (const Item& it : items) v += it.w * it.d * it.h;
  return v;
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

TEST_CASE("hardness instance has the prescribed integer items") {
  Instance one = gen_hardness(1);
  CHECK(one.knapsack.side == 4.0);
  CHECK_FALSE(one.allow_rotation);
  REQUIRE(one.items.size() == 3);
  const Item& g1 = item_by_id(one.items, 0);
  CHECK(g1.w == 4.0);
  CHECK(g1.d == 4.0);
  CHECK(g1.h == 1.0);
  const Item& h1 = item_by_id(one.items, 1);
  CHECK(h1.w == 1.0);
  CHECK(h1.d == 4.0);
  CHECK(h1.h == 3.0);
  const Item& i1 = item_by_id(one.items, 2);
  CHECK(i1.w == 3.0);
  CHECK(i1.d == 1.0);
  CHECK(i1.h == 3.0);

  Instance two = gen_hardness(2);
  CHECK(two.knapsack.side == 8.0);
  REQUIRE(two.items.size() == 6);
  const Item& g2 = item_by_id(two.items, 3);
  CHECK(g2.w == 7.0);
  CHECK(g2.d == 7.0);
  CHECK(g2.h == 2.0);
  const Item& h2 = item_by_id(two.items, 4);
  CHECK(h2.w == 2.0);
  CHECK(h2.d == 7.0);
  CHECK(h2.h == 5.0);
  const Item& i2 = item_by_id(two.items, 5);
  CHECK(i2.w == 5.0);
  CHECK(i2.d == 2.0);
  CHECK(i2.h == 5.0);
  for (const Item& it : two.items) CHECK(it.profit == Rat(1));

  CHECK_THROWS_AS(gen_hardness(0), std::invalid_argument);
  CHECK_THROWS_AS(gen_hardness(21), std::invalid_argument);
}

TEST_CASE("hardness packing nests every triple into the free cube") {
  PackingSolution one = hardness_optimal_packing(1);
  REQUIRE(one.placements.size() == 3);
  CHECK(one.placements[0].x == 0.0);
  CHECK(one.placements[0].y == 0.0);
  CHECK(one.placements[0].z == 0.0);
  CHECK(one.placements[1].x == 0.0);
  CHECK(one.placements[1].y == 0.0);
  CHECK(one.placements[1].z == 1.0);
  CHECK(one.placements[2].x == 1.0);
  CHECK(one.placements[2].y == 0.0);
  CHECK(one.placements[2].z == 1.0);

  PackingSolution two = hardness_optimal_packing(2);
  CHECK(two.placements[3].x == 1.0);
  CHECK(two.placements[3].y == 1.0);
  CHECK(two.placements[3].z == 1.0);

  for (int m = 1; m <= 6; ++m) {
    Instance inst = gen_hardness(m);
    PackingSolution sol = hardness_optimal_packing(m);
    REQUIRE(sol.placements.size() == 3 * static_cast<std::size_t>(m));
    const ValidationReport report =
        validate_packing(inst.knapsack, sol, inst.items, inst.allow_rotation);
    const std::string why = report.ok() ? "" : report.violations.front().message;
    CHECK_MESSAGE(report.ok(), "m=", m, ": ", why);
    CHECK(sol.profit == Rat(3 * m));
    CHECK(solution_profit(sol, inst.items) == Rat(3 * m));
  }
}

TEST_CASE("random families are deterministic and validate their shape") {
  for (const std::string& family : random_families()) {
    Instance a = gen_random(family, 24, 99);
    Instance b = gen_random(family, 24, 99);
    CHECK_MESSAGE(same_items(a.items, b.items), family);
    Instance c = gen_random(family, 24, 100);
    CHECK_MESSAGE(!same_items(a.items, c.items), family);
    REQUIRE(a.items.size() == 24);
    for (const Item& it : a.items) {
      CHECK(it.w > 0);
      CHECK(it.d > 0);
      CHECK(it.h > 0);
      CHECK(Rat(0) < it.profit);
    }
  }
  CHECK_THROWS_AS(gen_random("no-such-family", 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_random("cubes", -1, 1), std::invalid_argument);
  CHECK(gen_random("cubes", 0, 1).items.empty());
}

TEST_CASE("thin family respects the height cap") {
  Instance inst = gen_random("thin-I1", 50, 7, {{"mu", 0.01}});
  REQUIRE(inst.items.size() == 50);
  CHECK(inst.mu == 0.01);
  for (const Item& it : inst.items) CHECK(it.h <= 0.01);
  Instance dflt = gen_random("thin-I1", 10, 3);
  for (const Item& it : dflt.items) CHECK(it.h <= 0.01);
}

TEST_CASE("feasible families satisfy their packer's hypotheses end to end") {
  SUBCASE("nfdh_2d") {
    Instance inst = gen_random("lemma-feasible:nfdh_2d", 60, 5, {{"eps", 0.1}});
    double area = 0;
    for (const Item& it : inst.items) {
      CHECK(it.w <= 0.1);
      CHECK(it.d <= 0.1);
      area += it.w * it.d;
    }
    CHECK(area <= 1 - 2 * 0.1 + kTau);
    Pack2DResult res = nfdh_2d({1.0, 1.0}, footprints(inst.items));
    CHECK(res.all_placed());
  }
  SUBCASE("nfdh_3d") {
    Instance inst = gen_random("lemma-feasible:nfdh_3d", 400, 6, {{"eps", 0.2}});
    for (const Item& it : inst.items) {
      CHECK(it.w <= 0.2);
      CHECK(it.d <= 0.2);
      CHECK(it.h <= 0.2);
    }
    CHECK(total_volume(inst.items) <= 1 - 3 * 0.2 + kTau);
    Pack3DResult res = nfdh_3d({1.0, 1.0, 1.0}, identity_oriented(inst.items));
    CHECK(res.all_placed());
  }
  SUBCASE("steinberg") {
    Instance inst = gen_random("lemma-feasible:steinberg", 40, 7);
    Region2D region{1.0, 1.0};
    CHECK(steinberg_condition(region, footprints(inst.items)));
    CHECK(steinberg_pack(region, footprints(inst.items)).size() == 40);
  }
  SUBCASE("pack_sheets") {
    Instance inst = gen_random("lemma-feasible:pack_sheets", 30, 8, {{"delta", 0.1}});
    double area = 0;
    for (const Item& it : inst.items) {
      CHECK(it.w >= 0.5);
      CHECK(it.d <= 0.1);
      area += it.w * it.d;
    }
    CHECK(area <= 0.75 - 0.3 + kTau);
    CHECK(pack_sheets({1.0, 1.0}, footprints(inst.items), 0.1).size() == 30);
  }
  SUBCASE("vol_pack_3d") {
    Instance inst = gen_random("lemma-feasible:vol_pack_3d", 30, 1, {{"eps", 0.1}});
    for (const Item& it : inst.items) {
      CHECK((it.w <= 0.5 || it.d <= 0.5));
      CHECK(it.h <= 0.1);
    }
    CHECK(total_volume(inst.items) <= 1.0 / 3 - 0.2 + kTau);
    Pack3DResult res = vol_pack_3d({1.0, 1.0, 1.0}, identity_oriented(inst.items), 0.1);
    CHECK(res.all_placed());
  }
  SUBCASE("vol_pack_3dr") {
    Instance inst = gen_random("lemma-feasible:vol_pack_3dr", 200, 2, {{"eps", 0.05}});
    CHECK(inst.allow_rotation);
    for (const Item& it : inst.items) CHECK(std::min({it.w, it.d, it.h}) <= 0.05 * 0.05);
    CHECK(total_volume(inst.items) <= 7.0 / 24 - 0.25 + kTau);
    RotVolResult res = vol_pack_3dr({1.0, 1.0, 1.0}, inst.items, 0.05);
    CHECK(res.all_placed());
  }
  SUBCASE("parameter starves the budget") {
    CHECK_THROWS_AS(gen_random("lemma-feasible:pack_sheets", 5, 1, {{"delta", 0.25}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(gen_random("lemma-feasible:vol_pack_3d", 5, 1, {{"eps", 0.2}}),
                    std::invalid_argument);
  }
}

TEST_CASE("oracle nails the tiny closed-form optima") {
  SUBCASE("two big cubes exclude each other") {
    Instance inst;
    inst.items = {{0, 0.6, 0.6, 0.6, Rat(1)}, {1, 0.6, 0.6, 0.6, Rat(1)}};
    OracleResult res = oracle_exact(inst);
    CHECK(res.profit == Rat(1));
    CHECK(res.solution.placements.size() == 1);
  }
  SUBCASE("eight half cubes tile the knapsack") {
    Instance inst;
    for (int i = 0; i < 8; ++i) inst.items.push_back({i, 0.5, 0.5, 0.5, Rat(1)});
    OracleResult res = oracle_exact(inst);
    CHECK(res.profit == Rat(8));
    CHECK(res.solution.placements.size() == 8);
    const ValidationReport report =
        validate_packing(inst.knapsack, res.solution, inst.items, false);
    CHECK(report.ok());
  }
  SUBCASE("level one hardness instance") {
    Instance inst = gen_hardness(1);
    OracleResult res = oracle_exact(inst);
    CHECK(res.profit == Rat(3));
    CHECK(validate_packing(inst.knapsack, res.solution, inst.items, false).ok());
  }
  SUBCASE("empty instance") {
    Instance inst;
    OracleResult res = oracle_exact(inst);
    CHECK(res.profit == Rat(0));
    CHECK(res.solution.placements.empty());
  }
  SUBCASE("item count limit") {
    Instance inst = gen_random("cubes", 9, 1);
    CHECK_THROWS_AS(oracle_exact(inst), PreconditionError);
    OracleLimits wide;
    wide.max_items = 9;
    CHECK_NOTHROW(oracle_exact(inst, wide));
  }
}

TEST_CASE("rotation unlocks a packing the fixed orientation forbids") {
  Instance inst;
  inst.items = {{0, 1.0, 1.0, 0.4, Rat(3, 5)}, {1, 0.5, 0.5, 0.7, Rat(1, 2)}};
  inst.allow_rotation = false;
  OracleResult flat = oracle_exact(inst);
  CHECK(flat.profit == Rat(3, 5));
  inst.allow_rotation = true;
  OracleResult spun = oracle_exact(inst);
  CHECK(spun.profit == Rat(11, 10));
  CHECK(validate_packing(inst.knapsack, spun.solution, inst.items, true).ok());
}

TEST_CASE("oracle dominates randomized placement search") {
  std::mt19937_64 rng(20240831);
  for (int trial = 0; trial < 25; ++trial) {
    const char* family = trial % 2 ? "cubes" : "mixed-classes";
    Instance inst = gen_random(family, 2 + static_cast<int>(rng() % 3), rng());
    OracleResult res = oracle_exact(inst);
    CHECK(validate_packing(inst.knapsack, res.solution, inst.items, inst.allow_rotation).ok());
    CHECK(res.profit == solution_profit(res.solution, inst.items));

    Rat found(0);
    const int n = static_cast<int>(inst.items.size());
    for (int shot = 0; shot < 800; ++shot) {
      PackingSolution sol;
      const std::uint64_t mask = rng() % (1ull << n);
      for (int i = 0; i < n; ++i) {
        if (!(mask >> i & 1)) continue;
        const Item& it = inst.items[i];
        if (it.w > 1 || it.d > 1 || it.h > 1) continue;
        Placement p{it.id, Orient::WDH, unit(rng) * (1 - it.w), unit(rng) * (1 - it.d),
                    unit(rng) * (1 - it.h)};
        sol.placements.push_back(p);
      }
      if (validate_packing(inst.knapsack, sol, inst.items, inst.allow_rotation).ok()) {
        const Rat p = solution_profit(sol, inst.items);
        if (found < p) found = p;
      }
    }
    CHECK_MESSAGE(!(res.profit < found), "trial ", trial, ": oracle ", res.profit.str(),
                  " < sampled ", found.str());
  }
}

TEST_CASE("oracle is an upper bound for the portfolio") {
  std::mt19937_64 rng(424242);
  for (int trial = 0; trial < 20; ++trial) {
    const char* family = trial % 2 ? "cubes" : "mixed-classes";
    std::map<std::string, double> params;
    if (trial % 4 == 1) params["rot"] = 1;
    Instance inst = gen_random(family, 2 + static_cast<int>(rng() % 4), rng(), params);
    OracleResult res = oracle_exact(inst);
    PackingSolution heur = portfolio_solve(inst);
    const Rat hp = solution_profit(heur, inst.items);
    CHECK_MESSAGE(!(res.profit < hp), "trial ", trial, ": oracle ", res.profit.str(),
                  " < portfolio ", hp.str());
    Rat top(0);
    for (const Item& it : inst.items)
      if (it.w <= 1 && it.d <= 1 && it.h <= 1 && top < it.profit) top = it.profit;
    CHECK_MESSAGE(!(res.profit < top), "trial ", trial);
  }
}
