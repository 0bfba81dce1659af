#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cubik/cli.h"
#include "cubik/geometry.h"
#include "cubik/instances.h"
#include "cubik/json_io.h"
#include "cubik/oracle.h"

using namespace cubik;
namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args, std::string* captured = nullptr) {
  args.insert(args.begin(), "cubik");
  std::vector<char*> argv;
  argv.reserve(args.size());
  for (std::string& a : args) argv.push_back(a.data());
  std::ostringstream sink;
  std::streambuf* old = std::cout.rdbuf(sink.rdbuf());
  int rc = -1;
  try {
    rc = cli_run(static_cast<int>(argv.size()), argv.data());
  } catch (...) {
    std::cout.rdbuf(old);
    throw;
  }
  std::cout.rdbuf(old);
  if (captured) *captured = sink.str();
  return rc;
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "cubik_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) { return read_file(p.string()); }

void spit(const fs::path& p, const std::string& text) { write_file(p.string(), text); }

}  // namespace

TEST_CASE("generate writes a parseable instance") {
  const fs::path out = scratch_dir() / "h2.json";
  CHECK(run({"generate", "--family", "hardness", "--m", "2", "-o", out.string()}) == 0);
  Instance inst = parse_instance(slurp(out));
  CHECK(inst.knapsack.side == 8.0);
  CHECK(inst.items.size() == 6);

  const fs::path rnd = scratch_dir() / "r.json";
  CHECK(run({"generate", "--family", "thin-I1", "--n", "12", "--seed", "4", "--mu", "0.02", "-o",
             rnd.string()}) == 0);
  Instance thin = parse_instance(slurp(rnd));
  REQUIRE(thin.items.size() == 12);
  for (const Item& it : thin.items) CHECK(it.h <= 0.02);
}

TEST_CASE("solve then validate round-trips a pipeline") {
  const fs::path dir = scratch_dir();
  const fs::path inst = dir / "inst.json";
  const fs::path sol = dir / "sol.json";
  REQUIRE(run({"generate", "--family", "mixed-classes", "--n", "30", "--seed", "11", "-o",
               inst.string()}) == 0);
  CHECK(run({"solve", "-i", inst.string(), "-o", sol.string()}) == 0);
  PackingSolution parsed = parse_solution(slurp(sol));
  CHECK(Rat(0) < parsed.profit);
  CHECK(parsed.provenance.find("strategy") != std::string::npos);
  std::string report;
  CHECK(run({"validate", "-i", inst.string(), "-s", sol.string()}, &report) == 0);
  CHECK(report.find("valid") == 0);
}

TEST_CASE("solve accepts strategy subsets and flags") {
  const fs::path dir = scratch_dir();
  const fs::path inst = dir / "subset.json";
  const fs::path sol = dir / "subset_sol.json";
  REQUIRE(run({"generate", "--family", "cubes", "--n", "10", "--seed", "2", "-o",
               inst.string()}) == 0);
  CHECK(run({"solve", "-i", inst.string(), "-o", sol.string(), "--strategies",
             "stack-singletons", "--no-gap", "--eps", "0.2"}) == 0);
  PackingSolution parsed = parse_solution(slurp(sol));
  CHECK(parsed.provenance.find("singletons") != std::string::npos);
}

TEST_CASE("solve handles the empty instance") {
  const fs::path inst = scratch_dir() / "empty.json";
  spit(inst, "{\"side\":\"1\",\"allow_rotation\":false,\"items\":[]}\n");
  const fs::path sol = scratch_dir() / "empty_sol.json";
  CHECK(run({"solve", "-i", inst.string(), "-o", sol.string()}) == 0);
  PackingSolution parsed = parse_solution(slurp(sol));
  CHECK(parsed.placements.empty());
  CHECK(parsed.profit == Rat(0));
}

TEST_CASE("validate rejects an overlapping solution") {
  const fs::path dir = scratch_dir();
  const fs::path inst = dir / "two.json";
  spit(inst,
       "{\"side\":\"1\",\"allow_rotation\":false,\"items\":["
       "{\"id\":0,\"w\":\"0.6\",\"d\":\"0.6\",\"h\":\"0.6\",\"p\":\"1\"},"
       "{\"id\":1,\"w\":\"0.6\",\"d\":\"0.6\",\"h\":\"0.6\",\"p\":\"1\"}]}\n");
  const fs::path sol = dir / "two_sol.json";
  spit(sol,
       "{\"profit\":\"2\",\"placements\":["
       "{\"id\":0,\"x\":0.0,\"y\":0.0,\"z\":0.0},"
       "{\"id\":1,\"x\":0.1,\"y\":0.0,\"z\":0.0}]}\n");
  std::string report;
  CHECK(run({"validate", "-i", inst.string(), "-s", sol.string()}, &report) == 1);
  CHECK(report.find("violation") != std::string::npos);
}

TEST_CASE("classify emits the class report") {
  const fs::path inst = scratch_dir() / "thin.json";
  REQUIRE(run({"generate", "--family", "thin-I1", "--n", "8", "--seed", "5", "-o",
               inst.string()}) == 0);
  std::string out;
  CHECK(run({"classify", "-i", inst.string(), "--mu", "0.01"}, &out) == 0);
  CHECK(out.find("\"I1\"") != std::string::npos);
  CHECK(run({"classify", "-i", inst.string(), "--mu", "0.7"}) == 2);
}

TEST_CASE("oracle subcommand matches the library and honors its limit") {
  const fs::path inst = scratch_dir() / "tiny.json";
  REQUIRE(run({"generate", "--family", "cubes", "--n", "5", "--seed", "17", "-o",
               inst.string()}) == 0);
  std::string out;
  CHECK(run({"oracle", "-i", inst.string()}, &out) == 0);
  PackingSolution sol = parse_solution(out);
  Instance parsed = parse_instance(slurp(inst));
  CHECK(sol.profit == oracle_exact(parsed).profit);

  const fs::path big = scratch_dir() / "big.json";
  REQUIRE(run({"generate", "--family", "cubes", "--n", "9", "--seed", "1", "-o", big.string()}) ==
          0);
  CHECK(run({"oracle", "-i", big.string()}) == 3);
  CHECK(run({"oracle", "-i", big.string(), "--limit", "9"}) == 0);
}

TEST_CASE("bound evaluates a profile") {
  const fs::path prof = scratch_dir() / "prof.json";
  spit(prof,
       "{\"opt1\":\"1/4\",\"opt2\":\"1/4\",\"opt3\":\"1/4\",\"optL\":\"1/4\","
       "\"opt1l\":\"1/8\",\"opt1s\":\"1/8\",\"opt2l\":\"1/8\",\"opt2s\":\"1/8\","
       "\"opt3l\":\"1/8\",\"opt3s\":\"1/8\",\"opt2t\":\"1/8\",\"opt2h\":\"1/8\","
       "\"opt3t\":\"1/8\",\"opt3h\":\"1/8\",\"optLt\":\"1/8\",\"optLh\":\"1/8\","
       "\"v1\":\"1/4\",\"v2\":\"1/4\",\"v3\":\"1/4\","
       "\"v1s\":\"1/8\",\"v2s\":\"1/8\",\"v3s\":\"1/8\"}\n");
  std::string out;
  CHECK(run({"bound", "--profile", prof.string(), "--variant", "general"}, &out) == 0);
  CHECK(out.find("\"ratio\": \"9/2\"") != std::string::npos);
  CHECK(out.find("best-class") != std::string::npos);
  CHECK(run({"bound", "--profile", prof.string(), "--variant", "bogus"}) == 2);

  const fs::path bad = scratch_dir() / "bad_prof.json";
  spit(bad, "{\"opt1\":\"-1\"}\n");
  CHECK(run({"bound", "--profile", bad.string(), "--variant", "general"}) == 2);
}

TEST_CASE("certify prints every tight ratio and passes") {
  std::string out;
  CHECK(run({"certify"}, &out) == 0);
  for (const char* ratio : {"139/29", "5", "17/4", "4", "30/7", "24/7", "3", "1/4"})
    CHECK_MESSAGE(out.find(ratio) != std::string::npos, ratio);
  CHECK(out.find("all certificates exact") != std::string::npos);
  CHECK(out.find("NO") == std::string::npos);
}

TEST_CASE("bench runs its suites and renders the projection") {
  const fs::path svg = scratch_dir() / "view.svg";
  std::string out;
  CHECK(run({"bench", "--suite", "hardness", "--svg", svg.string()}, &out) == 0);
  CHECK(out.find("hardness m=5") != std::string::npos);
  const std::string art = slurp(svg);
  CHECK(art.rfind("<svg", 0) == 0);
  CHECK(art.find("top (x/y)") != std::string::npos);
  CHECK(art.find("<rect") != std::string::npos);
  CHECK(run({"bench", "--suite", "nope"}) == 2);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run({"no-such-command"}) == 2);
  CHECK(run({"generate"}) == 2);                              // missing --family
  CHECK(run({"generate", "--family", "no-such-family"}) == 2);
  CHECK(run({"generate", "--family", "hardness", "--m", "0"}) == 2);
  CHECK(run({"solve", "-i", "/definitely/not/here.json"}) == 2);
  CHECK(run({"solve", "--bogus-flag"}) == 2);
}

TEST_CASE("solve output is reproducible across runs and thread counts") {
  const fs::path dir = scratch_dir();
  const fs::path inst = dir / "det.json";
  REQUIRE(run({"generate", "--family", "mixed-classes", "--n", "40", "--seed", "9", "-o",
               inst.string()}) == 0);
  const fs::path s1 = dir / "det1.json", s2 = dir / "det2.json", s4 = dir / "det4.json";
  setenv("CUBIK_THREADS", "1", 1);
  REQUIRE(run({"solve", "-i", inst.string(), "-o", s1.string()}) == 0);
  REQUIRE(run({"solve", "-i", inst.string(), "-o", s2.string()}) == 0);
  setenv("CUBIK_THREADS", "4", 1);
  REQUIRE(run({"solve", "-i", inst.string(), "-o", s4.string()}) == 0);
  unsetenv("CUBIK_THREADS");
  CHECK(slurp(s1) == slurp(s2));
  CHECK(slurp(s1) == slurp(s4));

  const fs::path g1 = dir / "g1.json", g2 = dir / "g2.json";
  REQUIRE(run({"generate", "--family", "cubes", "--n", "25", "--seed", "3", "-o", g1.string()}) ==
          0);
  REQUIRE(run({"generate", "--family", "cubes", "--n", "25", "--seed", "3", "-o", g2.string()}) ==
          0);
  CHECK(slurp(g1) == slurp(g2));
}
