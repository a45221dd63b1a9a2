#include "chipopt/topology.hpp"

#include <numeric>

namespace chipopt {

namespace {

struct Dsu {
  std::vector<std::size_t> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

std::vector<std::pair<PhyRef, PhyRef>> build_relay_edges(const Architecture& arch) {
  std::vector<std::pair<PhyRef, PhyRef>> edges;
  for (std::size_t inst = 0; inst < arch.chiplet_count(); ++inst) {
    const ChipletSpec& spec = arch.spec_of(inst);
    if (!spec.can_relay) continue;
    for (std::size_t i = 0; i < spec.phys.size(); ++i)
      for (std::size_t j = i + 1; j < spec.phys.size(); ++j)
        edges.push_back({PhyRef{inst, i}, PhyRef{inst, j}});
  }
  return edges;
}

bool chiplet_graph_connected(const Architecture& arch, const std::vector<D2dLink>& links) {
  std::size_t n = arch.chiplet_count();
  if (n <= 1) return true;
  Dsu dsu(n);
  std::size_t components = n;
  for (const D2dLink& l : links)
    if (dsu.unite(l.a.instance, l.b.instance)) --components;
  return components == 1;
}

std::string check_topology(const Architecture& arch, const IciTopology& topo) {
  std::vector<int> port_use(arch.total_phy_nodes, 0);
  for (const D2dLink& l : topo.links) {
    if (l.a.instance == l.b.instance) return "d2d link connects two PHYs of the same chiplet";
    if (l.length_mm > arch.max_link_length_mm + kGeomTolMm)
      return "d2d link longer than the maximum link length";
    if (++port_use[arch.phy_node(l.a.instance, l.a.phy)] > 1)
      return "PHY carries more than one d2d link";
    if (++port_use[arch.phy_node(l.b.instance, l.b.phy)] > 1)
      return "PHY carries more than one d2d link";
  }
  auto expected = build_relay_edges(arch);
  if (expected.size() != topo.relay_edges.size()) return "relay edge set does not match the catalog";
  for (std::size_t i = 0; i < expected.size(); ++i)
    if (!(expected[i].first == topo.relay_edges[i].first &&
          expected[i].second == topo.relay_edges[i].second))
      return "relay edge set does not match the catalog";
  if (!chiplet_graph_connected(arch, topo.links)) return "chiplet graph is not connected";
  return {};
}

}  // namespace chipopt
