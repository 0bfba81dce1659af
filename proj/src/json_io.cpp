#include "cubik/json_io.h"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace cubik {

namespace {

using nlohmann::json;

double parse_dim(const json& j, const char* field, int id, double side) {
  if (!j.contains(field))
    throw ParseError("item " + std::to_string(id) + ": missing field '" + field + "'");
  const json& v = j.at(field);
  double x;
  if (v.is_string())
    x = std::strtod(v.get<std::string>().c_str(), nullptr);
  else if (v.is_number())
    x = v.get<double>();
  else
    throw ParseError("item " + std::to_string(id) + ": field '" + field + "' must be a decimal string");
  if (!(x > 0) || x > side + kTau)
    throw ParseError("item " + std::to_string(id) + ": dimension '" + field + "' = " +
                     std::to_string(x) + " outside (0, side]");
  return x;
}

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  Instance inst;
  if (!j.contains("side")) throw ParseError("missing field 'side'");
  const json& side = j.at("side");
  inst.knapsack.side =
      side.is_string() ? std::strtod(side.get<std::string>().c_str(), nullptr) : side.get<double>();
  if (!(inst.knapsack.side > 0)) throw ParseError("'side' must be positive");
  inst.allow_rotation = j.value("allow_rotation", false);
  if (j.contains("params")) {
    const json& p = j.at("params");
    inst.eps = p.value("eps", 0.1);
    inst.mu = p.value("mu", -1.0);
  }
  if (!j.contains("items") || !j.at("items").is_array()) throw ParseError("missing 'items' array");
  std::set<int> ids;
  for (const json& ji : j.at("items")) {
    Item it;
    if (!ji.contains("id")) throw ParseError("item without 'id'");
    it.id = ji.at("id").get<int>();
    if (!ids.insert(it.id).second)
      throw ParseError("duplicate item id " + std::to_string(it.id));
    it.w = parse_dim(ji, "w", it.id, inst.knapsack.side);
    it.d = parse_dim(ji, "d", it.id, inst.knapsack.side);
    it.h = parse_dim(ji, "h", it.id, inst.knapsack.side);
    if (!ji.contains("p")) throw ParseError("item " + std::to_string(it.id) + ": missing field 'p'");
    try {
      it.profit = parse_rat(ji.at("p").get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError("item " + std::to_string(it.id) + ": bad profit: " + e.what());
    }
    if (it.profit < Rat(0))
      throw ParseError("item " + std::to_string(it.id) + ": profit must be nonnegative");
    inst.items.push_back(it);
  }
  return inst;
}

std::string write_instance(const Instance& inst) {
  json j;
  j["side"] = fmt_double(inst.knapsack.side);
  j["allow_rotation"] = inst.allow_rotation;
  j["params"] = {{"eps", inst.eps}, {"mu", inst.mu}};
  j["items"] = json::array();
  for (const Item& it : inst.items) {
    j["items"].push_back({{"id", it.id},
                          {"w", fmt_double(it.w)},
                          {"d", fmt_double(it.d)},
                          {"h", fmt_double(it.h)},
                          {"p", it.profit.str()}});
  }
  return j.dump(2) + "\n";
}

PackingSolution parse_solution(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  PackingSolution sol;
  if (j.contains("profit")) sol.profit = parse_rat(j.at("profit").get<std::string>());
  sol.provenance = j.value("provenance", "");
  if (!j.contains("placements") || !j.at("placements").is_array())
    throw ParseError("missing 'placements' array");
  for (const json& jp : j.at("placements")) {
    Placement p;
    if (!jp.contains("id")) throw ParseError("placement without 'id'");
    p.item_id = jp.at("id").get<int>();
    try {
      p.orient = orient_from_name(jp.value("orient", "wdh"));
    } catch (const std::exception& e) {
      throw ParseError("placement of item " + std::to_string(p.item_id) + ": " + e.what());
    }
    p.x = jp.value("x", 0.0);
    p.y = jp.value("y", 0.0);
    p.z = jp.value("z", 0.0);
    sol.placements.push_back(p);
  }
  return sol;
}

std::string write_solution(const PackingSolution& sol) {
  json j;
  j["profit"] = sol.profit.str();
  j["provenance"] = sol.provenance;
  j["placements"] = json::array();
  for (const Placement& p : sol.placements) {
    j["placements"].push_back({{"id", p.item_id},
                               {"orient", orient_name(p.orient)},
                               {"x", p.x},
                               {"y", p.y},
                               {"z", p.z}});
  }
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
}

}  // namespace cubik
