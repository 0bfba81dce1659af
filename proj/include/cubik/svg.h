#pragma once

#include <string>

#include "cubik/geometry.h"

namespace cubik {

// Static three-view orthographic rendering of a packing: top (x/y), front
// (x/z) and side (y/z) panels, one translucent rectangle per placed item so
// overlap along the projected axis stays visible. Colors derive from item
// ids, so the byte output is a pure function of the inputs. Throws
// std::invalid_argument when a placement references an unknown item id.
std::string solution_svg(const Instance& inst, const PackingSolution& sol);

}  // namespace cubik
