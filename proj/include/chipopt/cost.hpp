#pragma once

#include <array>
#include <span>

#include "chipopt/proxies.hpp"

namespace chipopt {

// Weights of the nine cost components: one latency and one throughput weight
// per traffic class plus the area weight. All weights are >= 0 and at least
// one must be positive.
struct CostWeights {
  std::array<double, 4> latency{};
  std::array<double, 4> throughput{};
  double area = 0.0;

  void validate() const;
};

// Per-component scales estimated from random placements so that the
// heterogeneous terms become comparable: the mean raw latency, mean inverse
// throughput and mean area over the samples. Classes without pairs keep a
// neutral 1.0 and are excluded from the cost.
struct Normalizers {
  std::array<double, 4> latency{{1, 1, 1, 1}};
  std::array<double, 4> inv_throughput{{1, 1, 1, 1}};
  double area = 1.0;
  std::array<bool, 4> has_pairs{};

  friend bool operator==(const Normalizers&, const Normalizers&) = default;
};

Normalizers normalizers_from_samples(std::span<const RawProxies> samples);

// Raw components plus their normalized values and the weighted total. Lower
// is better; throughput enters inverted so that higher throughput lowers the
// cost.
struct CostReport {
  RawProxies raw;
  std::array<double, 4> norm_latency{};
  std::array<double, 4> norm_inv_throughput{};
  double norm_area = 0.0;
  double total = 0.0;

  friend bool operator==(const CostReport&, const CostReport&) = default;
};

CostReport make_cost_report(const RawProxies& raw, const CostWeights& weights,
                            const Normalizers& norm);

}  // namespace chipopt
