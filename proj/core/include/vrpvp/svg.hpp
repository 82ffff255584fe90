#pragma once

#include <string>

#include "vrpvp/model.hpp"
#include "vrpvp/solver.hpp"

namespace vrpvp {

/// Route map: one polyline per selected route, a square depot marker,
/// a circle per site (hollow when unvisited). Deterministic output.
std::string render_svg(const Instance& instance, const SolveReport& report);

}  // namespace vrpvp
