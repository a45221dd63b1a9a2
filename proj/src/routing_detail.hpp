#pragma once

// Internal routing machinery shared by the proxy kernels: the PHY-level
// routing graph, multi-source shortest distances, and the deterministic
// path walk. Not part of the public interface.

#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "chipopt/architecture.hpp"
#include "chipopt/topology.hpp"

namespace chipopt::detail {

inline constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max() / 4;

struct Arc {
  std::size_t to;
  std::int64_t w;
  std::int32_t link;  // index into topo.links, -1 for relay edges
};

struct RoutingGraph {
  std::vector<std::vector<Arc>> adj;  // per node, sorted by `to`
  std::vector<std::size_t> owner;     // node -> chiplet instance
  std::vector<std::size_t> phy_begin, phy_end;  // chiplet -> [begin, end) node range
};

inline RoutingGraph build_routing_graph(const Architecture& arch, const IciTopology& topo) {
  RoutingGraph g;
  g.adj.resize(arch.total_phy_nodes);
  g.owner.resize(arch.total_phy_nodes);
  g.phy_begin.resize(arch.chiplet_count());
  g.phy_end.resize(arch.chiplet_count());
  for (std::size_t inst = 0; inst < arch.chiplet_count(); ++inst) {
    g.phy_begin[inst] = arch.phy_offset[inst];
    g.phy_end[inst] = arch.phy_offset[inst] + arch.phy_count(inst);
    for (std::size_t n = g.phy_begin[inst]; n < g.phy_end[inst]; ++n) g.owner[n] = inst;
  }
  std::int64_t link_w = arch.latency.link_cost();
  for (std::size_t i = 0; i < topo.links.size(); ++i) {
    const D2dLink& l = topo.links[i];
    std::size_t u = arch.phy_node(l.a.instance, l.a.phy);
    std::size_t v = arch.phy_node(l.b.instance, l.b.phy);
    g.adj[u].push_back({v, link_w, static_cast<std::int32_t>(i)});
    g.adj[v].push_back({u, link_w, static_cast<std::int32_t>(i)});
  }
  std::int64_t relay_w = arch.latency.l_relay;
  for (const auto& [a, b] : topo.relay_edges) {
    std::size_t u = arch.phy_node(a.instance, a.phy);
    std::size_t v = arch.phy_node(b.instance, b.phy);
    g.adj[u].push_back({v, relay_w, -1});
    g.adj[v].push_back({u, relay_w, -1});
  }
  for (auto& arcs : g.adj)
    std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.to < b.to; });
  return g;
}

// Shortest distance from every node to the nearest PHY of `dst`. Entering or
// leaving a chiplet through any of its own PHYs is free, which the
// multi-source start encodes; internal movement elsewhere costs l_relay and
// exists only inside relay-capable chiplets.
inline void distances_to(const RoutingGraph& g, std::size_t dst, std::vector<std::int64_t>& dist) {
  dist.assign(g.adj.size(), kUnreachable);
  using Item = std::pair<std::int64_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (std::size_t n = g.phy_begin[dst]; n < g.phy_end[dst]; ++n) {
    dist[n] = 0;
    heap.push({0, n});
  }
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d != dist[u]) continue;
    for (const Arc& a : g.adj[u]) {
      std::int64_t nd = d + a.w;
      if (nd < dist[a.to]) {
        dist[a.to] = nd;
        heap.push({nd, a.to});
      }
    }
  }
}

// Scratch space for the path walk, reusable across calls.
struct WalkBuffers {
  std::vector<char> on_path, dead;
  std::vector<std::pair<std::size_t, std::size_t>> stack;  // (node, next arc index)
};

// Follows the minimum-cost route from `start` to any PHY of `dst` implied by
// `dist` (distances toward dst) and reports every traversed arc. Routes are
// simple paths; among equal-cost routes the lexicographically smallest
// node-id sequence is taken: depth-first search trying neighbors in
// ascending node id, backtracking out of zero-weight dead ends.
template <class ArcFn>
void walk_route(const RoutingGraph& g, const std::vector<std::int64_t>& dist, std::size_t start,
                std::size_t dst, WalkBuffers& buf, ArcFn&& on_arc) {
  buf.on_path.assign(g.adj.size(), 0);
  buf.dead.assign(g.adj.size(), 0);
  buf.stack.clear();
  buf.stack.push_back({start, 0});
  buf.on_path[start] = 1;
  while (!buf.stack.empty()) {
    std::size_t u = buf.stack.back().first;
    if (g.owner[u] == dst) {
      for (std::size_t i = 0; i + 1 < buf.stack.size(); ++i) {
        std::size_t from = buf.stack[i].first;
        std::size_t idx = buf.stack[i].second - 1;  // arc that led to the next node
        on_arc(g.adj[from][idx]);
      }
      return;
    }
    bool advanced = false;
    while (buf.stack.back().second < g.adj[u].size()) {
      const Arc& a = g.adj[u][buf.stack.back().second++];
      if (buf.on_path[a.to] || buf.dead[a.to]) continue;
      if (a.w + dist[a.to] != dist[u]) continue;
      buf.stack.push_back({a.to, 0});
      buf.on_path[a.to] = 1;
      advanced = true;
      break;
    }
    if (!advanced) {
      buf.dead[u] = 1;
      buf.on_path[u] = 0;
      buf.stack.pop_back();
    }
  }
  throw std::logic_error("walk_route: no simple optimal route found");
}

// First PHY of src (in node-id order) admitting a minimum-cost route.
inline std::size_t route_start(const RoutingGraph& g, const std::vector<std::int64_t>& dist,
                               std::size_t src, std::int64_t best) {
  for (std::size_t n = g.phy_begin[src]; n < g.phy_end[src]; ++n)
    if (dist[n] == best) return n;
  throw std::logic_error("route_start: inconsistent distances");
}

inline std::int64_t pair_cost(const RoutingGraph& g, const std::vector<std::int64_t>& dist,
                              std::size_t src) {
  std::int64_t best = kUnreachable;
  for (std::size_t n = g.phy_begin[src]; n < g.phy_end[src]; ++n) best = std::min(best, dist[n]);
  return best;
}

}  // namespace chipopt::detail
