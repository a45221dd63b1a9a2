#pragma once

#include <array>
#include <cstdint>

#include "chipopt/architecture.hpp"
#include "chipopt/topology.hpp"

namespace chipopt {

// Message classes between chiplet types. Traffic is bidirectional: a class
// covers all ordered (src, dst) pairs whose endpoint types match in either
// direction.
enum class TrafficClass : std::uint8_t { C2C = 0, C2M = 1, C2I = 2, M2I = 3 };

inline constexpr std::array<TrafficClass, 4> kTrafficClasses = {
    TrafficClass::C2C, TrafficClass::C2M, TrafficClass::C2I, TrafficClass::M2I};

const char* to_string(TrafficClass c);

// Class of an ordered (src, dst) type pair, or -1 when the pair belongs to
// no modeled class (memory-memory, io-io).
int traffic_class_of(ChipletType src, ChipletType dst);

// Raw performance estimates of one placement/topology combination.
//
// latency[c]: mean over all ordered (src, dst) chiplet pairs of class c of
// the cheapest route, where one D2D hop costs 2*l_phy + l_link cycles and
// each intermediate chiplet (necessarily relay-capable) adds l_relay.
// Routes are simple paths on the PHY graph; among equal-cost routes the
// lexicographically smallest PHY-node-id sequence is taken, which makes the
// flow assignment deterministic.
//
// throughput[c]: one unit of flow per ordered pair routed along those same
// paths; the value is 1 / (max D2D-link load), i.e. the saturation injection
// rate per flow relative to one link's capacity, clipped to 1.
//
// A class without any pair keeps has_pairs[c] == false and neutral values.
struct RawProxies {
  std::array<double, 4> latency{};
  std::array<double, 4> throughput{{1.0, 1.0, 1.0, 1.0}};
  std::array<bool, 4> has_pairs{};
  double area_mm2 = 0.0;

  friend bool operator==(const RawProxies&, const RawProxies&) = default;
};

// Parallel kernel (OpenMP over destination chiplets when enabled). Output is
// identical for any thread count. Throws Error{UnreachablePair} when some
// pair admits no route.
RawProxies compute_proxies(const Architecture& arch, const IciTopology& topo, double area_mm2);

// Straightforward single-threaded reference implementation with one
// shortest-path sweep per ordered pair; kept as the comparison baseline for
// tests and the benchmark.
RawProxies compute_proxies_serial(const Architecture& arch, const IciTopology& topo,
                                  double area_mm2);

}  // namespace chipopt
