#include "chipopt/cost.hpp"

#include "chipopt/errors.hpp"

namespace chipopt {

void CostWeights::validate() const {
  bool any_positive = area > 0.0;
  for (int c = 0; c < 4; ++c) {
    if (latency[c] < 0.0 || throughput[c] < 0.0)
      throw Error(Errc::ConfigError, "cost weights must be >= 0");
    any_positive = any_positive || latency[c] > 0.0 || throughput[c] > 0.0;
  }
  if (area < 0.0) throw Error(Errc::ConfigError, "cost weights must be >= 0");
  if (!any_positive) throw Error(Errc::ConfigError, "at least one cost weight must be > 0");
}

Normalizers normalizers_from_samples(std::span<const RawProxies> samples) {
  if (samples.empty())
    throw Error(Errc::ConfigError, "normalizer estimation needs at least one sample");
  Normalizers n;
  n.has_pairs = samples.front().has_pairs;
  double inv_s = 1.0 / static_cast<double>(samples.size());
  for (int c = 0; c < 4; ++c) {
    if (!n.has_pairs[c]) continue;
    double lat = 0.0, inv_thr = 0.0;
    for (const RawProxies& s : samples) {
      lat += s.latency[c];
      inv_thr += 1.0 / s.throughput[c];
    }
    n.latency[c] = lat * inv_s;
    n.inv_throughput[c] = inv_thr * inv_s;
  }
  double area = 0.0;
  for (const RawProxies& s : samples) area += s.area_mm2;
  n.area = area * inv_s;
  for (int c = 0; c < 4; ++c)
    if (n.has_pairs[c] && (!(n.latency[c] > 0.0) || !(n.inv_throughput[c] > 0.0)))
      throw Error(Errc::ConfigError, "normalizers must be positive");
  if (!(n.area > 0.0)) throw Error(Errc::ConfigError, "normalizers must be positive");
  return n;
}

CostReport make_cost_report(const RawProxies& raw, const CostWeights& weights,
                            const Normalizers& norm) {
  CostReport r;
  r.raw = raw;
  double total = 0.0;
  for (int c = 0; c < 4; ++c) {
    if (!raw.has_pairs[c]) continue;  // class without pairs contributes nothing
    r.norm_latency[c] = raw.latency[c] / norm.latency[c];
    r.norm_inv_throughput[c] = (1.0 / raw.throughput[c]) / norm.inv_throughput[c];
    total += weights.latency[c] * r.norm_latency[c];
    total += weights.throughput[c] * r.norm_inv_throughput[c];
  }
  r.norm_area = raw.area_mm2 / norm.area;
  total += weights.area * r.norm_area;
  r.total = total;
  return r;
}

}  // namespace chipopt
