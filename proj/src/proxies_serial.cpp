#include <algorithm>

#include "chipopt/errors.hpp"
#include "chipopt/proxies.hpp"
#include "routing_detail.hpp"

namespace chipopt {

// Reference implementation: one distance sweep per ordered pair, no caching,
// no threading. Slower than compute_proxies by design; the two must agree
// bit for bit.
RawProxies compute_proxies_serial(const Architecture& arch, const IciTopology& topo,
                                  double area_mm2) {
  detail::RoutingGraph g = detail::build_routing_graph(arch, topo);
  std::size_t n = arch.chiplet_count();

  std::array<std::int64_t, 4> lat_sum{}, pair_count{};
  std::array<std::vector<std::int64_t>, 4> load;
  for (auto& l : load) l.assign(topo.links.size(), 0);

  std::vector<std::int64_t> dist;
  detail::WalkBuffers buf;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t d = 0; d < n; ++d) {
      if (s == d) continue;
      int c = traffic_class_of(arch.type_of(s), arch.type_of(d));
      if (c < 0) continue;
      detail::distances_to(g, d, dist);
      std::int64_t best = detail::pair_cost(g, dist, s);
      if (best >= detail::kUnreachable)
        throw Error(Errc::UnreachablePair, "topology leaves some chiplet pair without a route");
      lat_sum[c] += best;
      pair_count[c] += 1;
      std::size_t start = detail::route_start(g, dist, s, best);
      detail::walk_route(g, dist, start, d, buf, [&](const detail::Arc& a) {
        if (a.link >= 0) load[c][a.link] += 1;
      });
    }

  RawProxies out;
  out.area_mm2 = area_mm2;
  for (int c = 0; c < 4; ++c) {
    out.has_pairs[c] = pair_count[c] > 0;
    if (!out.has_pairs[c]) continue;
    out.latency[c] = static_cast<double>(lat_sum[c]) / static_cast<double>(pair_count[c]);
    std::int64_t max_load = *std::max_element(load[c].begin(), load[c].end());
    out.throughput[c] = std::min(1.0, 1.0 / static_cast<double>(max_load));
  }
  return out;
}

}  // namespace chipopt
