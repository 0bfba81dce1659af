#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cubik/classify.h"
#include "cubik/geometry.h"
#include "cubik/subroutines.h"

using namespace cubik;

TEST_CASE("classification follows the size thresholds") {
  Instance inst;
  inst.items = {{0, 0.5, 0.5, 0.05, Rat(2)},   // flat, faces exactly 1/2: small split
                {1, 0.2, 0.2, 0.2, Rat(3)},    // everything above mu
                {2, 0.05, 0.6, 0.6, Rat(5)},   // thin width, tall
                {3, 0.6, 0.6, 0.01, Rat(7)},   // flat with a big face
                {4, 0.3, 0.05, 0.4, Rat(1)}};  // thin depth, short
  const Classification c = classify_items(inst, 0.1);
  CHECK(c.I1 == std::vector<int>{0, 3});
  CHECK(c.L == std::vector<int>{1});
  CHECK(c.I2 == std::vector<int>{2});
  CHECK(c.I3 == std::vector<int>{4});
  // both face dimensions must exceed 1/2 strictly
  CHECK(c.I1s == std::vector<int>{0});
  CHECK(c.I1l == std::vector<int>{3});
  CHECK(c.I2l == std::vector<int>{2});
  CHECK(c.S2.empty());
  CHECK(c.p_2h == Rat(5));
  CHECK(c.S3 == std::vector<int>{4});
  CHECK(c.p_3t == Rat(1));
  CHECK(c.p_Lt == Rat(3));
  CHECK(c.p_total == Rat(18));
  CHECK(c.h_1l == doctest::Approx(0.01));
  CHECK(c.w_2l == doctest::Approx(0.05));
  CHECK(c.v_1 == doctest::Approx(0.5 * 0.5 * 0.05 + 0.6 * 0.6 * 0.01));
}

TEST_CASE("classification rejects a bad mu") {
  Instance inst;
  CHECK_THROWS_AS(classify_items(inst, 0.0), PreconditionError);
  CHECK_THROWS_AS(classify_items(inst, 0.5), PreconditionError);
}

TEST_CASE("classification partitions every random set exactly") {
  std::mt19937_64 rng(20240825);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double mus[3] = {0.05, 0.1, 0.3};
  for (int trial = 0; trial < 200; ++trial) {
    Instance inst;
    const int n = 1 + int(u01(rng) * 60);
    double vol = 0;
    for (int i = 0; i < n; ++i) {
      Item it{i, 0.001 + 0.999 * u01(rng), 0.001 + 0.999 * u01(rng),
              0.001 + 0.999 * u01(rng), Rat(1 + int(u01(rng) * 9))};
      vol += it.w * it.d * it.h;
      inst.items.push_back(it);
    }
    const Classification c = classify_items(inst, mus[trial % 3]);
    std::set<int> seen;
    for (const auto* cls : {&c.L, &c.I1, &c.I2, &c.I3}) {
      for (int id : *cls) CHECK(seen.insert(id).second);
    }
    CHECK(seen.size() == inst.items.size());
    CHECK(c.p_total == c.p_L + c.p_1 + c.p_2 + c.p_3);
    CHECK(c.p_1 == c.p_1l + c.p_1s);
    CHECK(c.p_2 == c.p_2l + c.p_2s);
    CHECK(c.p_3 == c.p_3l + c.p_3s);
    CHECK(c.p_2 == c.p_2t + c.p_2h);
    CHECK(c.p_3 == c.p_3t + c.p_3h);
    CHECK(c.p_L == c.p_Lt + c.p_Lh);
    CHECK(c.I1l.size() + c.I1s.size() == c.I1.size());
    CHECK(c.I2l.size() + c.I2s.size() == c.I2.size());
    CHECK(c.I3l.size() + c.I3s.size() == c.I3.size());
    CHECK(c.v_L + c.v_1 + c.v_2 + c.v_3 == doctest::Approx(vol));
  }
}

TEST_CASE("classification json is stable and carries the aggregates") {
  Instance inst;
  inst.items = {{0, 0.5, 0.5, 0.05, Rat(2)}, {1, 0.2, 0.2, 0.2, Rat(3)}};
  const Classification c = classify_items(inst, 0.1);
  const std::string s = classification_json(c);
  CHECK(s.find("\"total\": \"5\"") != std::string::npos);
  CHECK(s.find("\"I1\"") != std::string::npos);
  CHECK(classification_json(c) == s);
}

TEST_CASE("delta choice skips bands with no mass") {
  std::vector<Item> items{{0, 0.6, 0.8, 0.05, Rat(1)}, {1, 0.7, 0.9, 0.05, Rat(1)}};
  const DeltaChoice dc = choose_delta(items, 0.5);
  CHECK(dc.delta == doctest::Approx(0.5));
  CHECK(dc.band_profit == Rat(0));
}

TEST_CASE("band boundaries are half open at the top") {
  // width exactly delta_1 sits outside [delta^10, delta)
  std::vector<Item> items{{0, 0.5, 0.9, 0.05, Rat(4)}};
  const DeltaChoice dc = choose_delta(items, 0.5);
  CHECK(dc.delta == doctest::Approx(0.5));
  CHECK(dc.band_profit == Rat(0));
}

TEST_CASE("the floor clamp empties the deep bands") {
  // mass in the first two bands; band three collapses to [floor, floor)
  std::vector<Item> items{{0, 0.3, 0.9, 0.05, Rat(2)},    // width in [1e-6, 0.5)
                          {1, 1e-5, 0.9, 0.05, Rat(3)}};  // width in band two
  const DeltaChoice dc = choose_delta(items, 0.5);
  CHECK(dc.band_profit == Rat(0));
  CHECK(dc.delta == doctest::Approx(1e-6));
}

TEST_CASE("the chosen band is always cheap") {
  std::mt19937_64 rng(20240826);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double eps = trial % 2 == 0 ? 0.3 : 0.5;
    std::vector<Item> items;
    const int n = 1 + int(u01(rng) * 50);
    Rat total;
    for (int i = 0; i < n; ++i) {
      const double w = std::pow(10.0, -6 * u01(rng));
      const double d = std::pow(10.0, -6 * u01(rng));
      items.push_back(Item{i, w, d, 0.01, Rat(1 + int(u01(rng) * 9))});
      total += items.back().profit;
    }
    const DeltaChoice dc = choose_delta(items, eps);
    CHECK(dc.delta > 0);
    CHECK(dc.delta <= eps + kTau);
    CHECK(dc.band_profit.to_double() <= eps * total.to_double() + 1e-9);
  }
}

TEST_CASE("width depth classes split at delta") {
  std::vector<Item> items{{0, 0.5, 0.5, 0.05, Rat(1)},    // big
                          {1, 0.5, 1e-11, 0.05, Rat(1)},  // wide
                          {2, 1e-11, 0.5, 0.05, Rat(1)},  // long
                          {3, 1e-11, 1e-11, 0.05, Rat(1)},// small
                          {4, 0.05, 0.5, 0.05, Rat(1)}};  // width in the band
  const WidthDepthClasses wd = big_wide_long_small(items, 0.1);
  CHECK(wd.big == std::vector<int>{0});
  CHECK(wd.wide == std::vector<int>{1});
  CHECK(wd.lng == std::vector<int>{2});
  CHECK(wd.small == std::vector<int>{3});
  CHECK(wd.medium == std::vector<int>{4});
}

TEST_CASE("every item lands in exactly one width depth class") {
  std::mt19937_64 rng(20240827);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Item> items;
    const int n = 1 + int(u01(rng) * 50);
    for (int i = 0; i < n; ++i) {
      const double w = std::pow(10.0, -8 * u01(rng));
      const double d = std::pow(10.0, -8 * u01(rng));
      items.push_back(Item{i, w, d, 0.01, Rat(1)});
    }
    const WidthDepthClasses wd = big_wide_long_small(items, 0.05 + 0.3 * u01(rng));
    std::set<int> seen;
    for (const auto* cls : {&wd.big, &wd.wide, &wd.lng, &wd.small, &wd.medium}) {
      for (int id : *cls) CHECK(seen.insert(id).second);
    }
    CHECK(seen.size() == items.size());
  }
}
