#pragma once

#include <span>
#include <string>

#include "accelppa/dse.hpp"

namespace accelppa {

// Normalized perf/area (y) against normalized energy (x). One circle per
// feasible normalized point, filled by PE type; frontier points carry a dark
// outline and are joined by a dashed polyline.
std::string scatter_svg(std::span<const DesignPoint> points, const std::string& title);

}  // namespace accelppa
