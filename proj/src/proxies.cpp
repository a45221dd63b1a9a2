#include "chipopt/proxies.hpp"

#include <algorithm>

#include "chipopt/errors.hpp"
#include "routing_detail.hpp"

namespace chipopt {

const char* to_string(TrafficClass c) {
  switch (c) {
    case TrafficClass::C2C: return "c2c";
    case TrafficClass::C2M: return "c2m";
    case TrafficClass::C2I: return "c2i";
    case TrafficClass::M2I: return "m2i";
  }
  return "?";
}

int traffic_class_of(ChipletType src, ChipletType dst) {
  auto key = [](ChipletType a, ChipletType b) {
    int lo = std::min(static_cast<int>(a), static_cast<int>(b));
    int hi = std::max(static_cast<int>(a), static_cast<int>(b));
    return lo * 3 + hi;
  };
  int k = key(src, dst);
  if (k == key(ChipletType::Compute, ChipletType::Compute)) return 0;
  if (k == key(ChipletType::Compute, ChipletType::Memory)) return 1;
  if (k == key(ChipletType::Compute, ChipletType::Io)) return 2;
  if (k == key(ChipletType::Memory, ChipletType::Io)) return 3;
  return -1;
}

namespace {

struct DestAccum {
  std::array<std::int64_t, 4> lat_sum{};
  std::array<std::int64_t, 4> pair_count{};
  std::array<std::vector<std::int32_t>, 4> load;
  bool unreachable = false;
};

RawProxies finish(const Architecture& arch, const IciTopology& topo,
                  const std::vector<DestAccum>& per_dest, double area_mm2) {
  for (const DestAccum& d : per_dest)
    if (d.unreachable)
      throw Error(Errc::UnreachablePair, "topology leaves some chiplet pair without a route");

  std::array<std::int64_t, 4> lat_sum{}, pair_count{};
  std::array<std::vector<std::int64_t>, 4> load;
  for (auto& l : load) l.assign(topo.links.size(), 0);
  for (const DestAccum& d : per_dest)
    for (int c = 0; c < 4; ++c) {
      lat_sum[c] += d.lat_sum[c];
      pair_count[c] += d.pair_count[c];
      if (!d.load[c].empty())
        for (std::size_t l = 0; l < topo.links.size(); ++l) load[c][l] += d.load[c][l];
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

// All ordered pairs with destination `d`, grouped so that one distance sweep
// per destination serves every source.
void accumulate_for_destination(const Architecture& arch, const detail::RoutingGraph& g,
                                std::size_t d, std::size_t n_links,
                                std::vector<std::int64_t>& dist, detail::WalkBuffers& buf,
                                DestAccum& acc) {
  detail::distances_to(g, d, dist);
  ChipletType td = arch.type_of(d);
  for (std::size_t s = 0; s < arch.chiplet_count(); ++s) {
    if (s == d) continue;
    int c = traffic_class_of(arch.type_of(s), td);
    if (c < 0) continue;
    std::int64_t best = detail::pair_cost(g, dist, s);
    if (best >= detail::kUnreachable) {
      acc.unreachable = true;
      return;
    }
    acc.lat_sum[c] += best;
    acc.pair_count[c] += 1;
    if (acc.load[c].empty()) acc.load[c].assign(n_links, 0);
    std::size_t start = detail::route_start(g, dist, s, best);
    detail::walk_route(g, dist, start, d, buf, [&](const detail::Arc& a) {
      if (a.link >= 0) acc.load[c][a.link] += 1;
    });
  }
}

}  // namespace

RawProxies compute_proxies(const Architecture& arch, const IciTopology& topo, double area_mm2) {
  detail::RoutingGraph g = detail::build_routing_graph(arch, topo);
  std::size_t n = arch.chiplet_count();
  std::vector<DestAccum> per_dest(n);

#pragma omp parallel
  {
    std::vector<std::int64_t> dist;
    detail::WalkBuffers buf;
#pragma omp for schedule(dynamic)
    for (std::ptrdiff_t d = 0; d < static_cast<std::ptrdiff_t>(n); ++d)
      accumulate_for_destination(arch, g, static_cast<std::size_t>(d), topo.links.size(), dist,
                                 buf, per_dest[d]);
  }

  return finish(arch, topo, per_dest, area_mm2);
}

}  // namespace chipopt
