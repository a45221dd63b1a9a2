#pragma once

#include <cstdint>
#include <vector>

#include "chipopt/chiplet.hpp"
#include "chipopt/geometry.hpp"

namespace chipopt {

// Cycle counts for the latency model. A message crossing one die-to-die link
// pays the sending PHY, the wire, and the receiving PHY; passing through a
// relay-capable chiplet pays l_relay.
struct LatencyParams {
  int l_phy = 12;
  int l_link = 1;
  int l_relay = 10;

  int link_cost() const { return 2 * l_phy + l_link; }
};

// The architecture under optimization: the chiplet catalog, one instance per
// physical die (instance ids are assigned once at load time and stay stable
// across all placement operations), and the shared interconnect parameters.
struct Architecture {
  std::vector<ChipletSpec> specs;           // catalog, one entry per chiplet kind
  std::vector<std::size_t> instance_spec;   // instance id -> index into specs

  double max_link_length_mm = 3.0;
  DistanceType distance_type = DistanceType::Euclidean;
  LatencyParams latency;

  // Grid representation parameters. rows/cols of 0 derive a near-square grid.
  int grid_rows = 0;
  int grid_cols = 0;
  double grid_spacing_mm = 0.5;

  // Derived on finalize().
  std::vector<RotationClass> spec_rot_class;
  std::vector<std::size_t> phy_offset;      // instance id -> first global PHY node id
  std::size_t total_phy_nodes = 0;

  std::size_t chiplet_count() const { return instance_spec.size(); }
  const ChipletSpec& spec_of(std::size_t instance) const { return specs[instance_spec[instance]]; }
  ChipletType type_of(std::size_t instance) const { return spec_of(instance).type; }
  RotationClass rot_class_of(std::size_t instance) const {
    return spec_rot_class[instance_spec[instance]];
  }
  std::size_t phy_count(std::size_t instance) const { return spec_of(instance).phys.size(); }
  std::size_t phy_node(std::size_t instance, std::size_t phy) const {
    return phy_offset[instance] + phy;
  }
  std::size_t count_of(ChipletType t) const;

  int effective_grid_rows() const;
  int effective_grid_cols() const;

  // Validates specs, caches rotation classes and PHY node numbering.
  void finalize();
};

// Builds instances from (spec, count) pairs in catalog order.
Architecture make_architecture(std::vector<std::pair<ChipletSpec, int>> catalog);

// One placed die: the instance's spec rotated by `rotation`, lower-left
// corner at `origin`.
struct PlacedChiplet {
  std::size_t instance = 0;
  Point origin;
  Rotation rotation = Rotation::R0;
};

Rect placed_rect(const Architecture& arch, const PlacedChiplet& p);

// Absolute PHY coordinates, order matching the spec's PHY list.
std::vector<Point> absolute_phys(const Architecture& arch, const PlacedChiplet& p);
Point absolute_phy(const Architecture& arch, const PlacedChiplet& p, std::size_t phy);

// Geometric form of any placement: non-overlapping placed chiplets and the
// minimal axis-aligned rectangle enclosing them.
struct Layout {
  std::vector<PlacedChiplet> placed;
  Rect bounding_box;
};

double layout_area_mm2(const Layout& layout);
Rect compute_bounding_box(const Architecture& arch, const std::vector<PlacedChiplet>& placed);

}  // namespace chipopt
