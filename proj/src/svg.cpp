#include "cubik/svg.h"

#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cubik {

namespace {

constexpr double kPanel = 220;   // drawing area per view, px
constexpr double kGap = 46;      // space between panels
constexpr double kMargin = 34;   // outer margin, also hosts the labels

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

void rect(std::ostringstream& out, double x, double y, double w, double h, int hue) {
  out << "  <rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w)
      << "\" height=\"" << num(h) << "\" fill=\"hsl(" << hue
      << ",65%,55%)\" fill-opacity=\"0.55\" stroke=\"#223\" stroke-width=\"0.6\"/>\n";
}

}  // namespace

std::string solution_svg(const Instance& inst, const PackingSolution& sol) {
  std::map<int, const Item*> by_id;
  for (const Item& it : inst.items) by_id[it.id] = &it;

  const double side = inst.knapsack.side;
  const double scale = kPanel / side;
  const double width = 2 * kMargin + 3 * kPanel + 2 * kGap;
  const double height = 2 * kMargin + kPanel;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
  out << "  <style>text{font:12px monospace;fill:#223}</style>\n";

  const char* names[3] = {"top (x/y)", "front (x/z)", "side (y/z)"};
  double origin[3];
  for (int v = 0; v < 3; ++v) {
    origin[v] = kMargin + v * (kPanel + kGap);
    out << "  <rect x=\"" << num(origin[v]) << "\" y=\"" << num(kMargin) << "\" width=\""
        << num(kPanel) << "\" height=\"" << num(kPanel)
        << "\" fill=\"none\" stroke=\"#223\" stroke-width=\"1\"/>\n";
    out << "  <text x=\"" << num(origin[v]) << "\" y=\"" << num(kMargin - 10) << "\">" << names[v]
        << "</text>\n";
  }

  for (const Placement& p : sol.placements) {
    auto it = by_id.find(p.item_id);
    if (it == by_id.end())
      throw std::invalid_argument("solution references unknown item id " +
                                  std::to_string(p.item_id));
    const Dims dims = oriented_dims(*it->second, p.orient);
    const int hue = ((p.item_id % 360) * 137 % 360 + 360) % 360;
    // second axis flipped: up in the image means increasing y or z
    rect(out, origin[0] + p.x * scale, kMargin + kPanel - (p.y + dims.d) * scale, dims.w * scale,
         dims.d * scale, hue);
    rect(out, origin[1] + p.x * scale, kMargin + kPanel - (p.z + dims.h) * scale, dims.w * scale,
         dims.h * scale, hue);
    rect(out, origin[2] + p.y * scale, kMargin + kPanel - (p.z + dims.h) * scale, dims.d * scale,
         dims.h * scale, hue);
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace cubik
