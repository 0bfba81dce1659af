#include "cubik/bounds.h"

#include <stdexcept>
#include <utility>

namespace cubik {

namespace {

const Rat kThird(1, 3);
const Rat kQuarter(1, 4);
const Rat kSixth(1, 6);

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// one class of the profile, possibly relabeled by an axis permutation
struct ClassView {
  Rat p, l, s, v, vs;
};

ClassView view(const ProfitProfile& p, int cls) {
  switch (cls) {
    case 1: return {p.opt1, p.opt1l, p.opt1s, p.v1, p.v1s};
    case 2: return {p.opt2, p.opt2l, p.opt2s, p.v2, p.v2s};
    default: return {p.opt3, p.opt3l, p.opt3s, p.v3, p.v3s};
  }
}

// weighted inequalities "w * bound >= rhs"; summing them certifies
// bound >= sum(rhs) / sum(w)
struct Combination {
  Rat weight;
  Rat rhs;
};

Rat combined_bound(const std::vector<Combination>& parts) {
  Rat w, rhs;
  for (const auto& c : parts) {
    w += c.weight;
    rhs += c.rhs;
  }
  return rhs / w;
}

Rat density_prefix_bound(const Rat& profit_s, const Rat& vol_s) {
  return profit_s / rat_max(Rat(3) * vol_s, Rat(1));
}

Rat general_bound(const ProfitProfile& p) {
  std::vector<int> exceed, within;
  for (int i = 1; i <= 3; ++i) {
    (view(p, i).v > kThird ? exceed : within).push_back(i);
  }
  require(exceed.size() <= 2, "class volumes cannot all exceed a third");

  if (exceed.size() <= 1) {
    // two classes stay below a third: best-class for the heavy one, the
    // slab split for the other two
    int first = exceed.empty() ? within[0] : exceed[0];
    std::vector<int> rest;
    for (int i = 1; i <= 3; ++i) {
      if (i != first) rest.push_back(i);
    }
    ClassView c1 = view(p, first), c2 = view(p, rest[0]), c3 = view(p, rest[1]);
    return combined_bound({
        {Rat(6), Rat(4) * c1.p},
        {Rat(4), Rat(4) * p.optL + c2.l + c3.l},
        {Rat(4), Rat(3) * c2.l + Rat(4) * c2.s},
        {Rat(4), Rat(3) * c3.l + Rat(4) * c3.s},
    });
  }

  // exactly two classes exceed a third
  int low = within[0];
  int a = exceed[0], b = exceed[1];
  if (view(p, a).vs > kThird && view(p, b).vs > kThird) {
    // both heavy classes keep large slab-free volume; dispatch on the light
    // class's volume
    ClassView c1 = view(p, low), c2 = view(p, a), c3 = view(p, b);
    if (c1.v > kQuarter) {
      return combined_bound({
          {Rat(60), Rat(20) * (c2.p + c3.p)},
          {Rat(32), Rat(32) * p.optL + Rat(8) * c1.l + Rat(12) * c2.l + Rat(12) * c3.l},
          {Rat(32), Rat(24) * c1.l + Rat(32) * c1.s},
          {Rat(27), Rat(12) * (c2.s + c3.s)},
      });
    }
    if (c1.v > kSixth) {
      return combined_bound({
          {Rat(6), Rat(2) * (c2.p + c3.p)},
          {Rat(4), Rat(4) * p.optL + Rat(2) * c2.l + Rat(2) * c3.l},
          {Rat(4), Rat(4) * c1.p},
          {Rat(5), Rat(2) * (c2.s + c3.s)},
      });
    }
    // the deep case needs the tall/short split, which is recorded relative
    // to the height axis; it only applies when the light class is the
    // height-thin one
    require(low == 1,
            "profile needs the height-thin class in the low-volume slot for "
            "the tall/short split analysis");
    return combined_bound({
        {Rat(312), Rat(104) * (p.opt2 + p.opt3)},
        {Rat(104), Rat(104) * p.optL + Rat(29) * p.opt1l},
        {Rat(116), Rat(87) * p.opt1l + Rat(116) * p.opt1s +
                       Rat(12) * (p.opt2t + p.opt3t) + Rat(12) * p.optLt},
        {Rat(24), Rat(12) * (p.optLh + p.opt2h + p.opt3h)},
    });
  }

  // one of the heavy classes still has small slab-free volume
  if (view(p, a).vs > kThird) std::swap(a, b);
  ClassView c1 = view(p, low), c2 = view(p, a), c3 = view(p, b);
  return combined_bound({
      {Rat(15), Rat(2) * c2.p + Rat(8) * c3.p},
      {Rat(8), Rat(8) * p.optL + Rat(2) * c1.l + Rat(6) * c2.l},
      {Rat(8), Rat(6) * c1.l + Rat(8) * c1.s},
      {Rat(6), Rat(6) * c2.s},
  });
}

Rat simple_bound(const ProfitProfile& p) {
  Rat best = p.optL;
  Rat classes = rat_max(p.opt1, rat_max(p.opt2, p.opt3));
  best = rat_max(best, Rat(2, 3) * classes);
  for (int i = 1; i <= 3; ++i) {
    ClassView c = view(p, i);
    Rat bound = c.v <= kQuarter ? c.p : c.p * kQuarter / c.v;
    best = rat_max(best, bound);
  }
  return best;
}

Rat cardinality_bound(const ProfitProfile& p) {
  require(p.optL.is_zero(),
          "the unit-profit analysis requires the no-thin-dimension profit to vanish");
  int low = 0;
  for (int i = 1; i <= 3 && low == 0; ++i) {
    if (view(p, i).v <= kThird) low = i;
  }
  require(low != 0, "class volumes cannot all exceed a third");
  std::vector<int> rest;
  for (int i = 1; i <= 3; ++i) {
    if (i != low) rest.push_back(i);
  }
  ClassView c1 = view(p, low), c2 = view(p, rest[0]), c3 = view(p, rest[1]);
  return combined_bound({
      {Rat(12), Rat(4) * (c2.p + c3.p)},
      {Rat(1), c1.l},
      {Rat(4), Rat(3) * c1.l + Rat(4) * c1.s},
  });
}

Rat uniform_density_bound(const ProfitProfile& p) {
  require(p.total() <= Rat(1), "profit equal to volume requires total profit at most 1");
  bool all_small = true;
  for (int i = 1; i <= 3; ++i) {
    ClassView c = view(p, i);
    require(c.p == c.v, "profit equal to volume requires matching class profit and volume");
    all_small = all_small && c.v <= kQuarter;
  }
  if (all_small) {
    return combined_bound({
        {Rat(1), p.opt1},
        {Rat(1), p.opt2},
        {Rat(1), p.opt3},
        {Rat(1), p.optL},
    });
  }
  // a quarter of the knapsack volume is always packable from the heavy class
  return kQuarter;
}

Rat rotation_bound(const ProfitProfile& p) {
  Rat best = Rat(7, 24) * (p.opt1 + p.opt2 + p.opt3);
  best = rat_max(best, p.optL + rat_max(p.opt1l, rat_max(p.opt2l, p.opt3l)));
  best = rat_max(best, kThird * (p.opt1s + p.opt2s + p.opt3s));
  best = rat_max(best, p.total() / Rat(6) + p.optL / Rat(3));
  return best;
}

Rat rot_uniform_bound(const ProfitProfile& p) {
  require(p.total() <= Rat(1), "profit equal to volume requires total profit at most 1");
  require(p.opt3.is_zero(),
          "the rotational volume analysis uses two canonical groups; the third "
          "class slot must be empty");
  require(p.opt1 == p.v1 && p.opt2 == p.v2,
          "profit equal to volume requires matching class profit and volume");
  Rat best = p.optL;
  best = rat_max(best, rat_min(kThird, p.opt1));
  best = rat_max(best, rat_min(kThird, p.opt2));
  best = rat_max(best, rat_min(kThird, p.total() / Rat(3)));
  return best;
}

}  // namespace

void validate_profile(const ProfitProfile& p) {
  const std::pair<const Rat*, const char*> nonneg[] = {
      {&p.opt1, "opt1"},   {&p.opt2, "opt2"},   {&p.opt3, "opt3"},
      {&p.optL, "optL"},   {&p.opt1l, "opt1l"}, {&p.opt1s, "opt1s"},
      {&p.opt2l, "opt2l"}, {&p.opt2s, "opt2s"}, {&p.opt3l, "opt3l"},
      {&p.opt3s, "opt3s"}, {&p.opt2t, "opt2t"}, {&p.opt2h, "opt2h"},
      {&p.opt3t, "opt3t"}, {&p.opt3h, "opt3h"}, {&p.optLt, "optLt"},
      {&p.optLh, "optLh"}, {&p.v1, "v1"},       {&p.v2, "v2"},
      {&p.v3, "v3"},       {&p.v1s, "v1s"},     {&p.v2s, "v2s"},
      {&p.v3s, "v3s"}};
  for (const auto& [value, name] : nonneg) {
    if (*value < Rat(0)) {
      throw std::invalid_argument(std::string("profile component ") + name +
                                  " is negative");
    }
  }
  require(p.opt1l + p.opt1s == p.opt1, "slab split of class 1 does not sum to its total");
  require(p.opt2l + p.opt2s == p.opt2, "slab split of class 2 does not sum to its total");
  require(p.opt3l + p.opt3s == p.opt3, "slab split of class 3 does not sum to its total");
  require(p.opt2t + p.opt2h == p.opt2, "height split of class 2 does not sum to its total");
  require(p.opt3t + p.opt3h == p.opt3, "height split of class 3 does not sum to its total");
  require(p.optLt + p.optLh == p.optL, "height split of class L does not sum to its total");
  require(p.v1 + p.v2 + p.v3 <= Rat(1), "class volumes exceed the knapsack");
  require(p.v1s <= p.v1 && p.v2s <= p.v2 && p.v3s <= p.v3,
          "slab-free volume exceeds its class volume");
}

std::map<std::string, Rat> lower_bound_formulas(const ProfitProfile& p) {
  validate_profile(p);
  std::map<std::string, Rat> out;
  out["best-class"] = Rat(2, 3) * rat_max(p.opt1, rat_max(p.opt2, p.opt3));
  out["large-plus-slabs"] = p.optL + rat_max(p.opt1l, rat_max(p.opt2l, p.opt3l));
  for (int i = 1; i <= 3; ++i) {
    ClassView c = view(p, i);
    const std::string n = std::to_string(i);
    out["density-prefix-" + n] = density_prefix_bound(c.s, c.vs);
    if (c.v <= kThird) out["slab-split-" + n] = Rat(3, 4) * c.l + c.s;
    if (c.v <= kQuarter) out["whole-class-" + n] = c.p;
  }
  if (p.v1 <= kSixth && p.v2 > kQuarter && p.v3 > kQuarter) {
    out["bottom-top-combine"] =
        Rat(3, 4) * p.opt1l + p.opt1s +
        rat_max(Rat(3, 20) * (p.opt2t + p.opt3t), kThird * p.optLt);
  }
  out["tall-half"] = Rat(1, 2) * (p.opt2h + p.opt3h + p.optLh);
  out["rot-classes"] = Rat(7, 24) * (p.opt1 + p.opt2 + p.opt3);
  out["rot-density-prefix"] = kThird * (p.opt1s + p.opt2s + p.opt3s);
  out["rot-large-combine"] = p.total() / Rat(6) + p.optL / Rat(3);
  return out;
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::General: return "general";
    case Variant::Simple: return "simple";
    case Variant::Cardinality: return "cardinality";
    case Variant::UniformDensity: return "uniform-density";
    case Variant::Rotation: return "rotation";
    case Variant::RotCardinality: return "rot-cardinality";
    case Variant::RotUniformDensity: return "rot-uniform-density";
  }
  return "unknown";
}

std::optional<Variant> variant_from_name(std::string_view name) {
  for (Variant v : all_variants()) {
    if (name == variant_name(v)) return v;
  }
  return std::nullopt;
}

std::vector<Variant> all_variants() {
  return {Variant::General,        Variant::Simple,
          Variant::Cardinality,    Variant::UniformDensity,
          Variant::Rotation,       Variant::RotCardinality,
          Variant::RotUniformDensity};
}

Rat ratio_certificate(const ProfitProfile& p, Variant variant) {
  validate_profile(p);
  require(!p.total().is_zero(), "profile has no profit to certify");
  Rat bound;
  switch (variant) {
    case Variant::General: bound = general_bound(p); break;
    case Variant::Simple: bound = simple_bound(p); break;
    case Variant::Cardinality: bound = cardinality_bound(p); break;
    case Variant::UniformDensity: bound = uniform_density_bound(p); break;
    case Variant::Rotation: bound = rotation_bound(p); break;
    case Variant::RotCardinality:
      require(p.optL.is_zero(),
              "the unit-profit analysis requires the no-thin-dimension profit to vanish");
      bound = rotation_bound(p);
      break;
    case Variant::RotUniformDensity: bound = rot_uniform_bound(p); break;
  }
  require(!bound.is_zero(), "combined lower bound vanished");
  return p.total() / bound;
}

std::array<Rat, 13> reference_dual_solution() {
  return {Rat(0),      Rat(0),      Rat(0),      Rat(1, 16), Rat(1, 16),
          Rat(2, 16),  Rat(4, 16),  Rat(4, 16),  Rat(4, 16), Rat(4, 16),
          Rat(4, 16),  Rat(4, 16),  Rat(4, 16)};
}

DualCheck verify_dual_certificate(const std::array<Rat, 13>& y) {
  DualCheck out;
  out.objective = y[9];
  auto check = [&out](bool ok, const std::string& label) {
    if (!ok) out.violations.push_back(label);
  };
  Rat sum;
  for (int i = 0; i < 9; ++i) {
    check(y[i] >= Rat(0), "multiplier " + std::to_string(i + 1) + " negative");
    sum += y[i];
  }
  const Rat z(0);
  const Rat tt(2, 3);
  const Rat tq(3, 4);
  check(sum <= Rat(1), "packing-bound multipliers sum above 1");
  check(-tt * y[0] + y[9] - y[10] <= z, "class-1 column");
  check(-tt * y[1] + y[9] - y[11] <= z, "class-2 column");
  check(-tt * y[2] + y[9] - y[12] <= z, "class-3 column");
  check(-y[3] - y[4] - y[5] + y[9] <= z, "large column");
  check(-y[3] - tq * y[6] + y[10] <= z, "class-1 slab column");
  check(-y[6] + y[10] <= z, "class-1 rest column");
  check(-y[4] - tq * y[7] + y[11] <= z, "class-2 slab column");
  check(-y[7] + y[11] <= z, "class-2 rest column");
  check(-y[5] - tq * y[8] + y[12] <= z, "class-3 slab column");
  check(-y[8] + y[12] <= z, "class-3 rest column");
  out.feasible = out.violations.empty();
  return out;
}

DualCheck verify_dual_certificate() { return verify_dual_certificate(reference_dual_solution()); }

std::vector<TightCase> tight_instances() {
  std::vector<TightCase> out;

  {
    ProfitProfile p;
    p.opt1 = Rat(23, 139);
    p.opt2 = p.opt3 = Rat(87, 278);
    p.optL = Rat(29, 139);
    p.opt1l = Rat(0);
    p.opt1s = Rat(23, 139);
    p.opt2l = Rat(0);
    p.opt2s = Rat(87, 278);
    p.opt3l = Rat(0);
    p.opt3s = Rat(87, 278);
    p.opt2t = Rat(0);
    p.opt2h = Rat(87, 278);
    p.opt3t = Rat(40, 139);
    p.opt3h = Rat(7, 278);
    p.optLt = Rat(18, 139);
    p.optLh = Rat(11, 139);
    p.v1 = Rat(0);
    p.v2 = p.v3 = Rat(1, 2);
    p.v1s = Rat(0);
    p.v2s = p.v3s = Rat(1, 2);
    out.push_back({Variant::General, p, Rat(139, 29)});
  }

  {
    ProfitProfile p;
    p.opt1 = Rat(1, 5);
    p.opt2 = p.opt3 = Rat(3, 10);
    p.optL = Rat(1, 5);
    p.opt1s = Rat(1, 5);
    p.opt2s = p.opt3s = Rat(3, 10);
    p.opt2t = p.opt3t = Rat(3, 10);
    p.optLt = Rat(1, 5);
    p.v1 = Rat(1, 8);
    p.v2 = p.v3 = Rat(3, 8);
    p.v1s = Rat(1, 8);
    p.v2s = p.v3s = Rat(3, 8);
    out.push_back({Variant::Simple, p, Rat(5)});
  }

  {
    ProfitProfile p;
    p.opt1 = Rat(5, 17);
    p.opt2 = p.opt3 = Rat(6, 17);
    p.opt1l = p.opt2l = p.opt3l = Rat(4, 17);
    p.opt1s = Rat(1, 17);
    p.opt2s = p.opt3s = Rat(2, 17);
    p.opt2t = p.opt3t = Rat(6, 17);
    p.v1 = p.v2 = p.v3 = Rat(1, 3);
    p.v1s = p.v2s = p.v3s = Rat(1, 3);
    out.push_back({Variant::Cardinality, p, Rat(17, 4)});
  }

  {
    ProfitProfile p;
    p.opt1 = p.opt2 = p.opt3 = p.optL = Rat(1, 4);
    p.opt1l = p.opt1s = Rat(1, 8);
    p.opt2l = p.opt2s = p.opt3l = p.opt3s = Rat(1, 8);
    p.opt2t = p.opt2h = p.opt3t = p.opt3h = Rat(1, 8);
    p.optLt = p.optLh = Rat(1, 8);
    p.v1 = p.v2 = p.v3 = Rat(1, 4);
    p.v1s = p.v2s = p.v3s = Rat(1, 8);
    out.push_back({Variant::UniformDensity, p, Rat(4)});
  }

  {
    ProfitProfile p;
    p.opt1 = Rat(11, 15);
    p.opt2 = p.opt3 = Rat(1, 30);
    p.optL = Rat(1, 5);
    p.opt1l = Rat(1, 30);
    p.opt1s = Rat(7, 10);
    p.opt2l = p.opt3l = Rat(1, 30);
    p.opt2t = p.opt3t = Rat(1, 30);
    p.optLh = Rat(1, 5);
    p.v1 = Rat(1, 2);
    p.v2 = p.v3 = Rat(1, 4);
    p.v1s = Rat(1, 2);
    out.push_back({Variant::Rotation, p, Rat(30, 7)});
  }

  {
    ProfitProfile p;
    p.opt1 = Rat(1);
    p.opt1l = Rat(7, 24);
    p.opt1s = Rat(17, 24);
    p.v1 = Rat(1, 2);
    p.v1s = Rat(1, 4);
    out.push_back({Variant::RotCardinality, p, Rat(24, 7)});
  }

  {
    ProfitProfile p;
    p.opt1 = p.opt2 = p.optL = Rat(1, 3);
    p.opt1l = Rat(1, 3);
    p.opt2s = Rat(1, 3);
    p.opt2h = Rat(1, 3);
    p.optLh = Rat(1, 3);
    p.v1 = p.v2 = Rat(1, 3);
    p.v2s = Rat(1, 3);
    out.push_back({Variant::RotUniformDensity, p, Rat(3)});
  }

  return out;
}

}  // namespace cubik
