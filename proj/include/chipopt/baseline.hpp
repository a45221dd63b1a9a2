#pragma once

#include <optional>
#include <string>

#include "chipopt/grid_placement.hpp"
#include "chipopt/topology.hpp"

namespace chipopt {

// Reference architecture: compute chiplets tile a centered near-square grid
// joined as a 2D mesh, memory and IO chiplets sit on the perimeter, each
// linked to the facing PHY of its compute neighbor. Slots are enumerated
// clockwise and used evenly spaced, memories first.
struct BaselineResult {
  std::optional<GridPlacement> grid;  // set for the homogeneous representation
  Layout layout;
  IciTopology topology;
  double area_mm2 = 0.0;
};

// representation: "homogeneous" | "heterogeneous".
// Throws Error{BaselineInfeasible} when the perimeter cannot host all
// memory/IO chiplets or the pattern violates the link-length bound.
BaselineResult build_baseline(const Architecture& arch, const std::string& representation);

}  // namespace chipopt
