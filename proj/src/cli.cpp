#include "cubik/cli.h"

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "json.hpp"

#include "cubik/bounds.h"
#include "cubik/classify.h"
#include "cubik/geometry.h"
#include "cubik/instances.h"
#include "cubik/json_io.h"
#include "cubik/oracle.h"
#include "cubik/strategies.h"
#include "cubik/subroutines.h"
#include "cubik/svg.h"

namespace cubik {

namespace {

using nlohmann::json;

int thread_cap() {
  const char* env = std::getenv("CUBIK_THREADS");
  if (!env) return 1;
  const long v = std::strtol(env, nullptr, 10);
  return v > 0 ? static_cast<int>(v) : 1;
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  return read_file(path);
}

// results land under their final name in one step: tmp file + rename
void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  const std::string tmp = path + ".tmp";
  write_file(tmp, content);
  std::filesystem::rename(tmp, path);
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

Rat rat_field(const json& j, const std::string& key) {
  if (!j.contains(key)) return Rat(0);
  const json& v = j.at(key);
  if (v.is_string()) return parse_rat(v.get<std::string>());
  if (v.is_number_integer()) return Rat(v.get<long long>());
  throw std::invalid_argument("profile field '" + key +
                              "' must be a rational string like \"29/139\"");
}

ProfitProfile profile_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("invalid profile JSON: ") + e.what());
  }
  ProfitProfile p;
  const std::pair<const char*, Rat*> fields[] = {
      {"opt1", &p.opt1},   {"opt2", &p.opt2},   {"opt3", &p.opt3},   {"optL", &p.optL},
      {"opt1l", &p.opt1l}, {"opt1s", &p.opt1s}, {"opt2l", &p.opt2l}, {"opt2s", &p.opt2s},
      {"opt3l", &p.opt3l}, {"opt3s", &p.opt3s}, {"opt2t", &p.opt2t}, {"opt2h", &p.opt2h},
      {"opt3t", &p.opt3t}, {"opt3h", &p.opt3h}, {"optLt", &p.optLt}, {"optLh", &p.optLh},
      {"v1", &p.v1},       {"v2", &p.v2},       {"v3", &p.v3},       {"v1s", &p.v1s},
      {"v2s", &p.v2s},     {"v3s", &p.v3s}};
  for (const auto& [key, slot] : fields) *slot = rat_field(j, key);
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const auto& [name, slot] : fields) known = known || key == name;
    if (!known) throw std::invalid_argument("unknown profile field '" + key + "'");
  }
  return p;
}

struct GenerateArgs {
  std::string family;
  int n = 20;
  std::uint64_t seed = 1;
  int m = 1;
  std::string out = "-";
  double eps = -1, mu = -1, delta = -1;
  bool rot = false;
};

int run_generate(const GenerateArgs& a) {
  Instance inst;
  if (a.family == "hardness") {
    inst = gen_hardness(a.m);
  } else {
    std::map<std::string, double> params;
    if (a.eps >= 0) params["eps"] = a.eps;
    if (a.mu >= 0) params["mu"] = a.mu;
    if (a.delta >= 0) params["delta"] = a.delta;
    if (a.rot) params["rot"] = 1;
    inst = gen_random(a.family, a.n, a.seed, params);
  }
  write_output(a.out, write_instance(inst));
  return 0;
}

struct SolveArgs {
  std::string in = "-";
  std::string out = "-";
  std::string strategies;
  bool use_gap = true;
  std::optional<double> eps, mu;
};

int run_solve(const SolveArgs& a) {
  Instance inst = parse_instance(read_input(a.in));
  if (a.eps) inst.eps = *a.eps;
  if (a.mu) inst.mu = *a.mu;
  PortfolioConfig cfg;
  cfg.use_gap = a.use_gap;
  cfg.threads = thread_cap();
  if (!a.strategies.empty()) cfg.only = split_csv(a.strategies);
  const PackingSolution sol = portfolio_solve(inst, cfg);
  const ValidationReport report =
      validate_packing(inst.knapsack, sol, inst.items, inst.allow_rotation);
  write_output(a.out, write_solution(sol));
  if (!report.ok()) {
    for (const Violation& v : report.violations) std::cerr << "violation: " << v.message << "\n";
    return 1;
  }
  return 0;
}

int run_validate(const std::string& in, const std::string& solpath) {
  Instance inst = parse_instance(read_input(in));
  PackingSolution sol = parse_solution(read_input(solpath));
  const ValidationReport report =
      validate_packing(inst.knapsack, sol, inst.items, inst.allow_rotation);
  if (report.ok()) {
    std::cout << "valid: " << sol.placements.size() << " placements, profit "
              << solution_profit(sol, inst.items).str() << "\n";
    return 0;
  }
  for (const Violation& v : report.violations) std::cout << "violation: " << v.message << "\n";
  return 1;
}

int run_classify(const std::string& in, std::optional<double> mu_flag) {
  Instance inst = parse_instance(read_input(in));
  const double mu = mu_flag ? *mu_flag : instance_mu(inst);
  if (!(mu > 0 && mu < 0.5)) {
    std::cerr << "error: mu must lie in (0, 1/2), got " << mu << "\n";
    return 2;
  }
  std::cout << classification_json(classify_items(inst, mu)) << "\n";
  return 0;
}

int run_oracle(const std::string& in, int limit) {
  Instance inst = parse_instance(read_input(in));
  OracleLimits lim;
  lim.max_items = limit;
  const OracleResult res = oracle_exact(inst, lim);
  std::cout << write_solution(res.solution);
  return 0;
}

int run_bound(const std::string& profile_path, const std::string& variant) {
  const ProfitProfile p = profile_from_json(read_input(profile_path));
  const std::optional<Variant> v = variant_from_name(variant);
  if (!v) {
    std::cerr << "error: unknown variant '" << variant << "'; known:";
    for (Variant known : all_variants()) std::cerr << " " << variant_name(known);
    std::cerr << "\n";
    return 2;
  }
  validate_profile(p);
  json out;
  out["variant"] = variant_name(*v);
  out["lower_bounds"] = json::object();
  for (const auto& [name, value] : lower_bound_formulas(p)) out["lower_bounds"][name] = value.str();
  out["ratio"] = ratio_certificate(p, *v).str();
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_certify() {
  bool all_ok = true;
  std::cout << std::left << std::setw(22) << "variant" << ' ' << std::setw(10) << "ratio" << ' '
            << std::setw(10) << "expected"
            << " exact\n";
  for (const TightCase& tc : tight_instances()) {
    const Rat ratio = ratio_certificate(tc.profile, tc.variant);
    const bool ok = ratio == tc.expected;
    all_ok = all_ok && ok;
    std::cout << std::left << std::setw(22) << variant_name(tc.variant) << ' ' << std::setw(10)
              << ratio.str() << ' ' << std::setw(10) << tc.expected.str() << ' '
              << (ok ? "yes" : "NO") << "\n";
  }
  const DualCheck dual = verify_dual_certificate(reference_dual_solution());
  const bool dual_ok = dual.feasible && dual.objective == Rat(1, 4);
  all_ok = all_ok && dual_ok;
  std::cout << "dual certificate: " << (dual.feasible ? "feasible" : "infeasible")
            << ", objective " << dual.objective.str() << " (want 1/4)\n";
  for (const std::string& v : dual.violations) std::cout << "  violated: " << v << "\n";
  std::cout << (all_ok ? "all certificates exact" : "CERTIFICATION FAILED") << "\n";
  return all_ok ? 0 : 1;
}

int run_bench(const std::string& suite, const std::string& svg_out) {
  PortfolioConfig cfg;
  cfg.threads = thread_cap();
  struct Row {
    std::string name;
    std::size_t n;
    std::string profit;
    std::string reference;
    double ms;
  };
  std::vector<Row> rows;
  Instance last_inst;
  PackingSolution last_sol;
  bool have_last = false;

  auto run_one = [&](const std::string& name, const Instance& inst, const std::string& reference) {
    const auto t0 = std::chrono::steady_clock::now();
    PackingSolution sol = portfolio_solve(inst, cfg);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    rows.push_back({name, inst.items.size(), sol.profit.str(), reference, ms});
    last_inst = inst;
    last_sol = std::move(sol);
    have_last = true;
  };

  if (suite == "hardness") {
    for (int m = 1; m <= 5; ++m) {
      run_one("hardness m=" + std::to_string(m), gen_hardness(m),
              "opt " + std::to_string(3 * m));
    }
  } else if (suite == "random") {
    const std::pair<const char*, int> jobs[] = {{"cubes", 40},
                                                {"thin-I1", 60},
                                                {"mixed-classes", 60},
                                                {"lemma-feasible:vol_pack_3d", 50},
                                                {"lemma-feasible:vol_pack_3dr", 50}};
    std::uint64_t seed = 42;
    for (const auto& [family, n] : jobs) run_one(family, gen_random(family, n, seed++), "-");
  } else if (suite == "oracle") {
    std::uint64_t seed = 7;
    for (int t = 0; t < 8; ++t) {
      const char* family = t % 2 ? "cubes" : "mixed-classes";
      Instance inst = gen_random(family, 3 + t % 4, seed++);
      const OracleResult res = oracle_exact(inst);
      run_one(std::string(family) + " n=" + std::to_string(inst.items.size()), inst,
              "opt " + res.profit.str());
    }
  } else {
    std::cerr << "error: unknown suite '" << suite << "' (hardness, random, oracle)\n";
    return 2;
  }

  std::cout << std::left << std::setw(32) << "instance" << std::right << std::setw(6) << "items"
            << std::setw(14) << "profit" << std::setw(14) << "reference" << std::setw(10) << "ms"
            << "\n";
  std::cout << std::fixed << std::setprecision(2);
  for (const Row& r : rows) {
    std::cout << std::left << std::setw(32) << r.name << std::right << std::setw(6) << r.n
              << std::setw(14) << r.profit << std::setw(14) << r.reference << std::setw(10) << r.ms
              << "\n";
  }
  if (!svg_out.empty() && have_last) {
    write_output(svg_out, solution_svg(last_inst, last_sol));
  }
  return 0;
}

}  // namespace

int cli_run(int argc, char** argv) {
  CLI::App app{"container-packing toolkit for the 3D geometric knapsack"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* cmd_gen = app.add_subcommand("generate", "emit an instance as JSON");
  cmd_gen->add_option("--family", gen.family, "hardness or a random family")->required();
  cmd_gen->add_option("--n", gen.n, "item count for random families");
  cmd_gen->add_option("--seed", gen.seed, "random seed");
  cmd_gen->add_option("--m", gen.m, "hardness level (side 2^(m+1))");
  cmd_gen->add_option("--eps", gen.eps, "family eps parameter");
  cmd_gen->add_option("--mu", gen.mu, "family mu parameter");
  cmd_gen->add_option("--delta", gen.delta, "family delta parameter");
  cmd_gen->add_flag("--rot", gen.rot, "allow rotation");
  cmd_gen->add_option("-o,--output", gen.out, "output file, - for stdout");

  SolveArgs solve;
  double solve_eps = 0, solve_mu = 0;
  auto* cmd_solve = app.add_subcommand("solve", "run the strategy portfolio");
  cmd_solve->add_option("-i,--input", solve.in, "instance file, - for stdin");
  cmd_solve->add_option("-o,--output", solve.out, "solution file, - for stdout");
  cmd_solve->add_option("--strategies", solve.strategies, "comma-separated strategy names");
  cmd_solve->add_flag("--gap,!--no-gap", solve.use_gap, "re-optimize layouts with the GAP solver");
  auto* opt_eps = cmd_solve->add_option("--eps", solve_eps, "override instance eps");
  auto* opt_mu = cmd_solve->add_option("--mu", solve_mu, "override instance mu");

  std::string val_in = "-", val_sol = "-";
  auto* cmd_val = app.add_subcommand("validate", "check a solution against an instance");
  cmd_val->add_option("-i,--input", val_in, "instance file, - for stdin");
  cmd_val->add_option("-s,--solution", val_sol, "solution file, - for stdin");

  std::string cls_in = "-";
  double cls_mu = 0;
  auto* cmd_cls = app.add_subcommand("classify", "report the item classes at a threshold");
  cmd_cls->add_option("-i,--input", cls_in, "instance file, - for stdin");
  auto* opt_cls_mu = cmd_cls->add_option("--mu", cls_mu, "threshold, default from the instance");

  std::string ora_in = "-";
  int ora_limit = 8;
  auto* cmd_ora = app.add_subcommand("oracle", "exact optimum of a tiny instance");
  cmd_ora->add_option("-i,--input", ora_in, "instance file, - for stdin");
  cmd_ora->add_option("--limit", ora_limit, "maximum item count");

  std::string bnd_profile, bnd_variant = "general";
  auto* cmd_bnd = app.add_subcommand("bound", "evaluate the worst-case analysis on a profile");
  cmd_bnd->add_option("--profile", bnd_profile, "profit profile JSON, - for stdin")->required();
  cmd_bnd->add_option("--variant", bnd_variant, "analysis variant");

  auto* cmd_cert = app.add_subcommand("certify", "reproduce the ratio table and dual certificate");

  std::string bench_suite = "random", bench_svg;
  auto* cmd_bench = app.add_subcommand("bench", "time the portfolio on a suite");
  cmd_bench->add_option("--suite", bench_suite, "hardness, random or oracle");
  cmd_bench->add_option("--svg", bench_svg, "render the last solution to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_gen->parsed()) return run_generate(gen);
    if (cmd_solve->parsed()) {
      if (opt_eps->count()) solve.eps = solve_eps;
      if (opt_mu->count()) solve.mu = solve_mu;
      return run_solve(solve);
    }
    if (cmd_val->parsed()) return run_validate(val_in, val_sol);
    if (cmd_cls->parsed())
      return run_classify(cls_in, opt_cls_mu->count() ? std::optional<double>(cls_mu)
                                                      : std::nullopt);
    if (cmd_ora->parsed()) return run_oracle(ora_in, ora_limit);
    if (cmd_bnd->parsed()) return run_bound(bnd_profile, bnd_variant);
    if (cmd_cert->parsed()) return run_certify();
    if (cmd_bench->parsed()) return run_bench(bench_suite, bench_svg);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const RatOverflow& e) {
    std::cerr << "error: rational overflow: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace cubik
