#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chipopt/architecture.hpp"

namespace chipopt {

// One endpoint of a link: a specific PHY of a specific chiplet instance.
struct PhyRef {
  std::size_t instance = 0;
  std::size_t phy = 0;

  friend bool operator==(const PhyRef&, const PhyRef&) = default;
};

struct D2dLink {
  PhyRef a;
  PhyRef b;
  double length_mm = 0.0;
};

// Inter-chiplet interconnect over PHY nodes. D2D links are physical wires
// between PHYs of different chiplets; each PHY is a single port and carries
// at most one link. Relay edges model internal forwarding and form the
// complete graph over each relay-capable chiplet's PHYs.
struct IciTopology {
  std::vector<D2dLink> links;
  std::vector<std::pair<PhyRef, PhyRef>> relay_edges;
};

// Relay edges are fully determined by the architecture.
std::vector<std::pair<PhyRef, PhyRef>> build_relay_edges(const Architecture& arch);

// Connectivity of the chiplet-level graph induced by the D2D links.
bool chiplet_graph_connected(const Architecture& arch, const std::vector<D2dLink>& links);

// Checks every structural invariant (port uniqueness, no self links, length
// bound, relay edge set, chiplet connectivity). Returns an empty string when
// valid, otherwise a description of the first violation. Used by tests.
std::string check_topology(const Architecture& arch, const IciTopology& topo);

}  // namespace chipopt
